//! The monadic-profunctor interface and its executable law harness.
//!
//! A monadic profunctor is a two-parameter type `P<U, V>` that is a monad in
//! `V` and contravariant in `U` through `comap` over partial functions.
//! Each instantiation in this crate (biparsers, lenses, bigenerators)
//! implements [`Profmonad`] on a marker type, so the laws below are written
//! once and checked extensionally against every instantiation.
//!
//! Program equalities are tested pointwise: an [`ExtensionalEq`] subject
//! carries finite probe sets and compares two `P` values by running both on
//! every probe. A failing probe is a counterexample, not a proof gap.

use std::rc::Rc;

use crate::partial::{partial_compose, partial_identity, PartialFn};

/// A family of monadic-profunctor combinators, one marker type per
/// instantiation.
pub trait Profmonad {
    type P<U: 'static, V: 'static>: Clone + 'static;

    /// Yields `x` without touching the domain effect.
    fn pure<U: 'static, V: Clone + 'static>(x: V) -> Self::P<U, V>;

    /// Sequences `p` with `k`; both directions observe the same pre-view.
    fn bind<U: 'static, V: 'static, W: 'static>(
        p: Self::P<U, V>,
        k: Rc<dyn Fn(&V) -> Self::P<U, W>>,
    ) -> Self::P<U, W>;

    /// Pre-composes the backward direction with a partial extraction.
    fn comap<U: 'static, V: 'static, W: 'static>(
        f: PartialFn<U, V>,
        p: Self::P<V, W>,
    ) -> Self::P<U, W>;
}

/// Lifts an optional value into an instantiation's backward effect.
///
/// `to_failure(Some(x))` must embed `x` without observable effect output
/// (a writer-like effect emits the monoid unit, a state-like effect leaves
/// the source unchanged); `to_failure(None)` is the failing effect.
pub trait FailureLift {
    type Eff<A: 'static>;

    fn to_failure<A: Clone + 'static>(x: Option<A>) -> Self::Eff<A>;
}

/// Extensional-equivalence oracle for one instantiation at one pre-view
/// type `U`: compares two `P<U, V>` values by their observable behaviour on
/// the subject's probe sets. Probe sets are nonempty by construction and
/// `equiv(p, p)` always holds.
pub trait ExtensionalEq<M: Profmonad, U: 'static> {
    fn equiv<V>(&self, a: &M::P<U, V>, b: &M::P<U, V>) -> bool
    where
        V: Clone + PartialEq + 'static;
}

/// A purification: a monadic-profunctor homomorphism from `P` down to
/// partial functions.
pub trait Purify<M: Profmonad> {
    fn proj<U: 'static, V: 'static>(&self, p: &M::P<U, V>) -> PartialFn<U, V>;
}

/// `comap identity = id`, checked on `p`.
pub fn law_comap_identity<M, S, U, V>(s: &S, p: &M::P<U, V>) -> bool
where
    M: Profmonad,
    S: ExtensionalEq<M, U>,
    U: Clone + 'static,
    V: Clone + PartialEq + 'static,
{
    s.equiv(&M::comap(partial_identity(), p.clone()), p)
}

/// `comap (f >=> g) = comap f . comap g`.
pub fn law_comap_compose<M, S, U, V, W, Z>(
    s: &S,
    f: PartialFn<U, V>,
    g: PartialFn<V, W>,
    p: &M::P<W, Z>,
) -> bool
where
    M: Profmonad,
    S: ExtensionalEq<M, U>,
    U: 'static,
    V: 'static,
    W: 'static,
    Z: Clone + PartialEq + 'static,
{
    let lhs = M::comap(partial_compose(f.clone(), g.clone()), p.clone());
    let rhs = M::comap(f, M::comap(g, p.clone()));
    s.equiv(&lhs, &rhs)
}

fn pure_arrow<M, U, V>() -> Rc<dyn Fn(&V) -> M::P<U, V>>
where
    M: Profmonad,
    U: 'static,
    V: Clone + 'static,
{
    Rc::new(|v: &V| M::pure(v.clone()))
}

/// Left identity, right identity and associativity of `P<U, _>` as a monad.
pub fn law_monad<M, S, U, V, W, X>(
    s: &S,
    p: &M::P<U, V>,
    k: Rc<dyn Fn(&V) -> M::P<U, W>>,
    h: Rc<dyn Fn(&W) -> M::P<U, X>>,
    x0: V,
) -> bool
where
    M: Profmonad,
    S: ExtensionalEq<M, U>,
    U: 'static,
    V: Clone + PartialEq + 'static,
    W: Clone + PartialEq + 'static,
    X: Clone + PartialEq + 'static,
{
    let left_id = s.equiv(&M::bind(M::pure(x0.clone()), Rc::clone(&k)), &k(&x0));
    let right_id = s.equiv(&M::bind(p.clone(), pure_arrow::<M, U, V>()), p);
    let assoc = {
        let lhs = M::bind(M::bind(p.clone(), Rc::clone(&k)), Rc::clone(&h));
        let k2 = Rc::clone(&k);
        let h2 = Rc::clone(&h);
        let rhs = M::bind(
            p.clone(),
            Rc::new(move |v: &V| M::bind(k2(v), Rc::clone(&h2))),
        );
        s.equiv(&lhs, &rhs)
    };
    left_id && right_id && assoc
}

/// The monadic-profunctor interaction laws: `comap f (return y) = return y`
/// and `comap f (p >>= k) = comap f p >>= (\y -> comap f (k y))`.
pub fn law_promonad<M, S, U, V, Y, Z>(
    s: &S,
    f: PartialFn<U, V>,
    p: &M::P<V, Y>,
    k: Rc<dyn Fn(&Y) -> M::P<V, Z>>,
    x0: Y,
) -> bool
where
    M: Profmonad,
    S: ExtensionalEq<M, U>,
    U: 'static,
    V: 'static,
    Y: Clone + PartialEq + 'static,
    Z: Clone + PartialEq + 'static,
{
    let comap_pure = s.equiv(
        &M::comap(f.clone(), M::pure(x0.clone())),
        &M::pure(x0.clone()),
    );
    let comap_bind = {
        let lhs = M::comap(f.clone(), M::bind(p.clone(), Rc::clone(&k)));
        let f2 = f.clone();
        let k2 = Rc::clone(&k);
        let rhs = M::bind(
            M::comap(f.clone(), p.clone()),
            Rc::new(move |y: &Y| M::comap(f2.clone(), k2(y))),
        );
        s.equiv(&lhs, &rhs)
    };
    comap_pure && comap_bind
}

/// Checks that `proj` is a monadic-profunctor homomorphism into partial
/// functions, pointwise on `probes`:
///
/// * `proj(comap(f, p)) = comap(f, proj(p))`
/// * `proj(comap(f, p) >>= k) = \u -> proj(comap(f, p))(u) >>= \y -> proj(k y)(u)`
/// * `proj(pure(x0)) = \u -> Some(x0)`
pub fn law_purify_homomorphism<M, Pr, U, U2, V, W>(
    probes: &[U],
    pr: &Pr,
    f: PartialFn<U, U2>,
    p: &M::P<U2, V>,
    k: Rc<dyn Fn(&V) -> M::P<U, W>>,
    x0: W,
) -> bool
where
    M: Profmonad,
    Pr: Purify<M>,
    U: 'static,
    U2: 'static,
    V: Clone + PartialEq + 'static,
    W: Clone + PartialEq + 'static,
{
    assert!(!probes.is_empty(), "probe set must be nonempty");

    let comap_case = {
        let lhs = pr.proj(&M::comap(f.clone(), p.clone()));
        let rhs = partial_compose(f.clone(), pr.proj(p));
        probes.iter().all(|u| lhs.apply(u) == rhs.apply(u))
    };

    let bind_case = {
        let pu = M::comap(f.clone(), p.clone());
        let lhs = pr.proj(&M::bind(pu.clone(), Rc::clone(&k)));
        let proj_pu = pr.proj(&pu);
        probes.iter().all(|u| {
            let rhs = proj_pu.apply(u).and_then(|y| pr.proj(&k(&y)).apply(u));
            lhs.apply(u) == rhs
        })
    };

    let pure_case = {
        let lhs = pr.proj(&M::pure::<U, W>(x0.clone()));
        probes.iter().all(|u| lhs.apply(u) == Some(x0.clone()))
    };

    comap_case && bind_case && pure_case
}

/// Checks that `k` is an injective arrow with claimed left inverse `k_inv`:
/// for each sample `x`, `k x >>= \y -> pure (x, y)` must be observably equal
/// to `k x >>= \y -> pure (k_inv y, y)`.
pub fn check_injective_arrow<M, S, U, V, W>(
    s: &S,
    k: Rc<dyn Fn(&V) -> M::P<U, W>>,
    k_inv: Rc<dyn Fn(&W) -> V>,
    samples: &[V],
) -> bool
where
    M: Profmonad,
    S: ExtensionalEq<M, U>,
    U: 'static,
    V: Clone + PartialEq + 'static,
    W: Clone + PartialEq + 'static,
{
    assert!(!samples.is_empty(), "sample set must be nonempty");
    samples.iter().all(|x| {
        let x1 = x.clone();
        let lhs = M::bind(
            k(x),
            Rc::new(move |y: &W| M::pure((x1.clone(), y.clone()))),
        );
        let inv = Rc::clone(&k_inv);
        let rhs = M::bind(
            k(x),
            Rc::new(move |y: &W| M::pure((inv(y), y.clone()))),
        );
        s.equiv(&lhs, &rhs)
    })
}
