//! Partial functions: total functions into an optional result.
//!
//! These are both the target of purification (dropping a bidirectional
//! value's domain effects leaves a plain `u -> Option<v>`) and the shape of
//! the extraction functions accepted by `comap`.

use std::rc::Rc;

/// A pure, deterministic function from `U` to an optional `V`.
///
/// Failure is a value (`None`), never a panic. `PartialFn` itself forms a
/// monadic profunctor: `pure` ignores its input, `bind` sequences two
/// partial functions on the same input, and `comap` pre-composes.
pub struct PartialFn<U: ?Sized, V> {
    f: Rc<dyn Fn(&U) -> Option<V>>,
}

impl<U: ?Sized, V> Clone for PartialFn<U, V> {
    fn clone(&self) -> Self {
        PartialFn { f: Rc::clone(&self.f) }
    }
}

impl<U: ?Sized, V> PartialFn<U, V> {
    pub fn new(f: impl Fn(&U) -> Option<V> + 'static) -> Self {
        PartialFn { f: Rc::new(f) }
    }

    /// A total function lifted into a partial one.
    pub fn total(f: impl Fn(&U) -> V + 'static) -> Self {
        PartialFn::new(move |u| Some(f(u)))
    }

    pub fn apply(&self, u: &U) -> Option<V> {
        (self.f)(u)
    }
}

/// The identity partial function: `|x| Some(x)`.
pub fn partial_identity<U: Clone + 'static>() -> PartialFn<U, U> {
    PartialFn::new(|u: &U| Some(u.clone()))
}

/// Left-to-right Kleisli composition of partial functions.
///
/// `partial_compose(f, g).apply(x)` is `None` when `f` fails, otherwise
/// `g` applied to `f`'s result.
pub fn partial_compose<U: 'static, V: 'static, W: 'static>(
    f: PartialFn<U, V>,
    g: PartialFn<V, W>,
) -> PartialFn<U, W> {
    PartialFn::new(move |u| f.apply(u).and_then(|v| g.apply(&v)))
}

/// Safe head of a slice-backed list.
pub fn safe_head<T: Clone + 'static>() -> PartialFn<Vec<T>, T> {
    PartialFn::new(|l: &Vec<T>| l.first().cloned())
}

/// Safe tail of a slice-backed list.
pub fn safe_tail<T: Clone + 'static>() -> PartialFn<Vec<T>, Vec<T>> {
    PartialFn::new(|l: &Vec<T>| {
        if l.is_empty() {
            None
        } else {
            Some(l[1..].to_vec())
        }
    })
}

/// Safe head of a string, by unicode scalar value.
pub fn str_head() -> PartialFn<String, char> {
    PartialFn::new(|s: &String| s.chars().next())
}

/// Safe tail of a string, by unicode scalar value.
pub fn str_tail() -> PartialFn<String, String> {
    PartialFn::new(|s: &String| {
        let mut it = s.chars();
        it.next().map(|_| it.as_str().to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cases() {
        assert_eq!(partial_identity::<i64>().apply(&5), Some(5));
        assert_eq!(partial_identity::<String>().apply(&String::new()), Some(String::new()));
    }

    #[test]
    fn compose_arithmetic() {
        let f = PartialFn::new(|x: &i64| Some(x + 1));
        let g = PartialFn::new(|x: &i64| Some(2 * x));
        assert_eq!(partial_compose(f, g).apply(&3), Some(8));
    }

    #[test]
    fn compose_failure_propagates() {
        let f: PartialFn<i64, i64> = PartialFn::new(|_| None);
        let g = PartialFn::new(|x: &i64| Some(2 * x));
        assert_eq!(partial_compose(f, g).apply(&3), None);
    }

    #[test]
    fn compose_heads() {
        let nested = vec![vec![7], vec![8]];
        let h = partial_compose(safe_head::<Vec<i64>>(), safe_head::<i64>());
        assert_eq!(h.apply(&nested), Some(7));
    }
}
