//! Monadic lenses: getters and putters with conflict predicates.
//!
//! A lens pairs `get : s -> Option<v>` with
//! `put : u -> s -> Option<((v, s), s -> bool)>`. The predicate returned by
//! `put` detects later writes that invalidate the just-written view (the
//! duplication problem): library lenses return predicates that hold on the
//! freshly updated source. Lenses form a monadic profunctor per source
//! type: `bind` threads the updated source through the second put and
//! conjoins the predicates, `comap` pre-applies a partial function to the
//! pre-view.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::partial::{safe_head, safe_tail, PartialFn};
use crate::profmonad::{ExtensionalEq, FailureLift, Profmonad, Purify};
use crate::tree::Tree;

/// A predicate over sources. Predicates form a monoid: the unit is
/// constantly true and combination is pointwise conjunction.
pub struct SourcePredicate<S: ?Sized> {
    test: Rc<dyn Fn(&S) -> bool>,
}

impl<S: ?Sized> Clone for SourcePredicate<S> {
    fn clone(&self) -> Self {
        SourcePredicate { test: Rc::clone(&self.test) }
    }
}

impl<S: ?Sized> SourcePredicate<S> {
    pub fn new(test: impl Fn(&S) -> bool + 'static) -> Self {
        SourcePredicate { test: Rc::new(test) }
    }

    /// The monoid unit: constantly true.
    pub fn always() -> Self {
        SourcePredicate::new(|_| true)
    }

    pub fn test(&self, s: &S) -> bool {
        (self.test)(s)
    }

    /// Pointwise conjunction, the monoid combination.
    pub fn and(&self, other: &Self) -> Self
    where
        S: 'static,
    {
        let a = self.clone();
        let b = other.clone();
        SourcePredicate::new(move |s| a.test(s) && b.test(s))
    }
}

pub struct Lens<S: 'static, U: 'static, V: 'static> {
    get: Rc<dyn Fn(&S) -> Option<V>>,
    put: Rc<dyn Fn(&U, &S) -> Option<((V, S), SourcePredicate<S>)>>,
}

impl<S, U, V> Clone for Lens<S, U, V> {
    fn clone(&self) -> Self {
        Lens { get: Rc::clone(&self.get), put: Rc::clone(&self.put) }
    }
}

pub fn mk_lens<S, U, V>(
    get: impl Fn(&S) -> Option<V> + 'static,
    put: impl Fn(&U, &S) -> Option<((V, S), SourcePredicate<S>)> + 'static,
) -> Lens<S, U, V> {
    Lens { get: Rc::new(get), put: Rc::new(put) }
}

impl<S: Clone, U, V> Lens<S, U, V> {
    pub fn get(&self, s: &S) -> Option<V> {
        (self.get)(s)
    }

    pub fn put(&self, u: &U, s: &S) -> Option<((V, S), SourcePredicate<S>)> {
        (self.put)(u, s)
    }

    /// Reader-like return: `get` ignores the source, `put` leaves it
    /// unchanged and returns the unit predicate.
    pub fn pure(x: V) -> Lens<S, U, V>
    where
        V: Clone,
    {
        let x2 = x.clone();
        mk_lens(
            move |_| Some(x.clone()),
            move |_, s: &S| Some(((x2.clone(), s.clone()), SourcePredicate::always())),
        )
    }

    pub fn fail() -> Lens<S, U, V> {
        mk_lens(|_| None, |_, _| None)
    }

    pub fn bind<W>(self, k: impl Fn(&V) -> Lens<S, U, W> + 'static) -> Lens<S, U, W> {
        self.bind_rc(Rc::new(k))
    }

    pub fn bind_rc<W>(self, k: Rc<dyn Fn(&V) -> Lens<S, U, W>>) -> Lens<S, U, W> {
        let get_p = Rc::clone(&self.get);
        let put_p = Rc::clone(&self.put);
        let k2 = Rc::clone(&k);
        mk_lens(
            move |s| {
                let v = get_p(s)?;
                k(&v).get(s)
            },
            move |u, s| {
                let ((v, s1), p1) = put_p(u, s)?;
                let ((w, s2), p2) = k2(&v).put(u, &s1)?;
                Some(((w, s2), p1.and(&p2)))
            },
        )
    }

    pub fn comap<T: 'static>(self, f: PartialFn<T, U>) -> Lens<S, T, V> {
        let put = Rc::clone(&self.put);
        Lens {
            get: Rc::clone(&self.get),
            put: Rc::new(move |t: &T, s: &S| f.apply(t).and_then(|u| put(&u, s))),
        }
    }
}

pub fn lens_pure<S: Clone + 'static, U: 'static, V: Clone + 'static>(x: V) -> Lens<S, U, V> {
    Lens::pure(x)
}

pub fn lens_bind<S: Clone + 'static, U: 'static, V: 'static, W: 'static>(
    l: Lens<S, U, V>,
    k: impl Fn(&V) -> Lens<S, U, W> + 'static,
) -> Lens<S, U, W> {
    l.bind(k)
}

pub fn lens_comap<S: Clone + 'static, T: 'static, U: 'static, V: 'static>(
    f: PartialFn<T, U>,
    l: Lens<S, U, V>,
) -> Lens<S, T, V> {
    l.comap(f)
}

/// Delays construction, for recursively defined lenses.
fn defer<S: Clone, U, V>(mk: impl Fn() -> Lens<S, U, V> + 'static) -> Lens<S, U, V> {
    let mk = Rc::new(mk);
    let mk2 = Rc::clone(&mk);
    mk_lens(move |s| mk().get(s), move |u, s| mk2().put(u, s))
}

/// Classical lens composition. The composite put succeeds only when the
/// inner put's conflict predicate accepts the intermediate source it just
/// produced.
pub fn compose_vv<S, T, U>(lt: Lens<S, T, T>, ly: Lens<T, U, U>) -> Lens<S, U, U>
where
    S: Clone + 'static,
    T: Clone + 'static,
    U: 'static,
{
    let lt2 = lt.clone();
    let ly2 = ly.clone();
    mk_lens(
        move |s| {
            let t = lt.get(s)?;
            ly.get(&t)
        },
        move |xu, s| {
            let t = lt2.get(s)?;
            let ((y, xt), q) = ly2.put(xu, &t)?;
            let ((_, s2), p) = lt2.put(&xt, s)?;
            if q.test(&xt) {
                Some(((y, s2), p))
            } else {
                None
            }
        },
    )
}

// --- key-value map lenses ---

pub type Key = String;
pub type Value = String;
pub type KvMap = BTreeMap<Key, Value>;

/// Focuses one key of a key-value map. `get` fails on a missing key; `put`
/// inserts and returns a predicate checking that the key still holds the
/// written value.
pub fn at_key(k: &str) -> Lens<KvMap, Value, Value> {
    let k1 = k.to_string();
    let k2 = k.to_string();
    mk_lens(
        move |m: &KvMap| m.get(&k1).cloned(),
        move |v: &Value, m: &KvMap| {
            let mut updated = m.clone();
            updated.insert(k2.clone(), v.clone());
            let k3 = k2.clone();
            let v2 = v.clone();
            let pred = SourcePredicate::new(move |m2: &KvMap| m2.get(&k3) == Some(&v2));
            Some(((v.clone(), updated), pred))
        },
    )
}

/// Gets/sets several keys at once, by monadically folding `at_key` with
/// safe-head/safe-tail extractions. Putting fewer values than keys fails.
pub fn at_keys(ks: &[Key]) -> Lens<KvMap, Vec<Value>, Vec<Value>> {
    match ks.split_first() {
        None => Lens::pure(Vec::new()),
        Some((k, rest)) => {
            let rest = rest.to_vec();
            at_key(k).comap(safe_head()).bind(move |x: &Value| {
                let x = x.clone();
                at_keys(&rest).comap(safe_tail()).bind(move |xs: &Vec<Value>| {
                    let mut out = Vec::with_capacity(xs.len() + 1);
                    out.push(x.clone());
                    out.extend(xs.iter().cloned());
                    Lens::pure(out)
                })
            })
        }
    }
}

// --- tree lenses ---

/// Views the root label of a tree, `None` standing for a leaf. Putting a
/// label onto a leaf grows a node; putting `None` truncates to a leaf.
pub fn root_l() -> Lens<Tree, Option<i64>, Option<i64>> {
    fn getter(t: &Tree) -> Option<Option<i64>> {
        Some(t.label())
    }
    mk_lens(getter, |n: &Option<i64>, t: &Tree| {
        let updated = match (t, n) {
            (_, None) => Tree::Leaf,
            (Tree::Leaf, Some(n)) => Tree::node(Tree::Leaf, *n, Tree::Leaf),
            (Tree::Node(l, _, r), Some(n)) => Tree::Node(l.clone(), *n, r.clone()),
        };
        let observed = getter(&updated);
        let pred = SourcePredicate::new(move |t2: &Tree| getter(t2) == observed);
        Some(((*n, updated), pred))
    })
}

/// Views the right child of a node; fails on a leaf in both directions.
pub fn right_l() -> Lens<Tree, Tree, Tree> {
    mk_lens(
        |t: &Tree| t.right().cloned(),
        |r: &Tree, t: &Tree| match t {
            Tree::Leaf => None,
            Tree::Node(l, n, _) => {
                let updated = Tree::Node(l.clone(), *n, Box::new(r.clone()));
                let written = r.clone();
                let pred =
                    SourcePredicate::new(move |t2: &Tree| t2.right() == Some(&written));
                Some(((r.clone(), updated), pred))
            }
        },
    )
}

/// Views and updates the right spine of a tree as a list of labels,
/// composed monadically from `root_l` and `right_l`.
pub fn spine_l() -> Lens<Tree, Vec<i64>, Vec<i64>> {
    let head = PartialFn::total(|spine: &Vec<i64>| spine.first().copied());
    root_l().comap(head).bind(|hd: &Option<i64>| match hd {
        None => Lens::pure(Vec::new()),
        Some(n) => {
            let n = *n;
            compose_vv(right_l(), defer(spine_l))
                .comap(safe_tail())
                .bind(move |tl: &Vec<i64>| {
                    let mut out = Vec::with_capacity(tl.len() + 1);
                    out.push(n);
                    out.extend(tl.iter().copied());
                    Lens::pure(out)
                })
        }
    })
}

/// Purification at a fixed source: run `put` against `source` and keep only
/// the view.
pub fn lens_purify<S, U, V>(source: S, l: &Lens<S, U, V>) -> PartialFn<U, V>
where
    S: Clone + 'static,
{
    let l = l.clone();
    PartialFn::new(move |u| l.put(u, &source).map(|((v, _), _)| v))
}

/// Marker type: lenses over source `S` as a monadic profunctor.
pub struct LensP<S: 'static>(std::marker::PhantomData<S>);

impl<S: Clone + 'static> Profmonad for LensP<S> {
    type P<U: 'static, V: 'static> = Lens<S, U, V>;

    fn pure<U: 'static, V: Clone + 'static>(x: V) -> Lens<S, U, V> {
        Lens::pure(x)
    }

    fn bind<U: 'static, V: 'static, W: 'static>(
        p: Lens<S, U, V>,
        k: Rc<dyn Fn(&V) -> Lens<S, U, W>>,
    ) -> Lens<S, U, W> {
        p.bind_rc(k)
    }

    fn comap<U: 'static, V: 'static, W: 'static>(
        f: PartialFn<U, V>,
        p: Lens<S, V, W>,
    ) -> Lens<S, U, W> {
        p.comap(f)
    }
}

/// The state-like backward effect of a lens, reified for `to_failure`.
pub struct StatePut<S: 'static, A: 'static>(
    pub Rc<dyn Fn(&S) -> Option<((A, S), SourcePredicate<S>)>>,
);

impl<S: Clone + 'static> FailureLift for LensP<S> {
    type Eff<A: 'static> = StatePut<S, A>;

    fn to_failure<A: Clone + 'static>(x: Option<A>) -> StatePut<S, A> {
        match x {
            None => StatePut(Rc::new(|_| None)),
            Some(a) => StatePut(Rc::new(move |s: &S| {
                Some(((a.clone(), s.clone()), SourcePredicate::always()))
            })),
        }
    }
}

/// Probe sets for extensional comparison of lenses: sources are fed to
/// `get`, every (pre-view, source) pair to `put`. Predicates are opaque and
/// observed only by applying them to the probe sources and to the updated
/// source.
pub struct LensSubject<S, U> {
    sources: Vec<S>,
    pre_views: Vec<U>,
}

impl<S, U> LensSubject<S, U> {
    pub fn new(sources: Vec<S>, pre_views: Vec<U>) -> Self {
        assert!(!sources.is_empty() && !pre_views.is_empty(), "probe sets must be nonempty");
        LensSubject { sources, pre_views }
    }

    pub fn sources(&self) -> &[S] {
        &self.sources
    }
}

impl<S: Clone + PartialEq + 'static, U: 'static> ExtensionalEq<LensP<S>, U>
    for LensSubject<S, U>
{
    fn equiv<V>(&self, a: &Lens<S, U, V>, b: &Lens<S, U, V>) -> bool
    where
        V: Clone + PartialEq + 'static,
    {
        let gets_agree = self
            .sources
            .iter()
            .all(|s| a.get(s) == b.get(s));
        let puts_agree = self.pre_views.iter().all(|u| {
            self.sources.iter().all(|s| match (a.put(u, s), b.put(u, s)) {
                (None, None) => true,
                (Some(((va, sa), pa)), Some(((vb, sb), pb))) => {
                    va == vb
                        && sa == sb
                        && pa.test(&sa) == pb.test(&sb)
                        && self.sources.iter().all(|probe| pa.test(probe) == pb.test(probe))
                }
                _ => false,
            })
        });
        gets_agree && puts_agree
    }
}

/// The lens purification family, fixed at one source.
pub struct LensPurify<S: Clone + 'static> {
    pub source: S,
}

impl<S: Clone + 'static> Purify<LensP<S>> for LensPurify<S> {
    fn proj<U: 'static, V: 'static>(&self, p: &Lens<S, U, V>) -> PartialFn<U, V> {
        lens_purify(self.source.clone(), p)
    }
}

// --- key-value map text format ---

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KvFormatError {
    pub reason: String,
}

impl fmt::Display for KvFormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed key-value text: {}", self.reason)
    }
}

impl std::error::Error for KvFormatError {}

/// Parses the `key=value`-per-line map format. Keys must be unique; neither
/// keys nor values may contain `=` (no escaping is defined).
pub fn parse_kv_map(text: &str) -> Result<KvMap, KvFormatError> {
    let mut map = KvMap::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| KvFormatError {
            reason: format!("line {}: missing '='", idx + 1),
        })?;
        if v.contains('=') {
            return Err(KvFormatError { reason: format!("line {}: extra '='", idx + 1) });
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(KvFormatError { reason: format!("line {}: duplicate key {k:?}", idx + 1) });
        }
    }
    Ok(map)
}

/// Renders a map in the `key=value`-per-line format, one trailing newline
/// per entry.
pub fn render_kv_map(map: &KvMap) -> Result<String, KvFormatError> {
    let mut out = String::new();
    for (k, v) in map {
        if k.contains('=') || k.contains('\n') || v.contains('=') || v.contains('\n') {
            return Err(KvFormatError {
                reason: format!("key or value for {k:?} contains '=' or newline"),
            });
        }
        out.push_str(k);
        out.push('=');
        out.push_str(v);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::t0;

    fn map(pairs: &[(&str, &str)]) -> KvMap {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn at_key_examples() {
        let m = map(&[("k", "v")]);
        assert_eq!(at_key("k").get(&m), Some("v".to_string()));
        assert_eq!(at_key("k").get(&KvMap::new()), None);

        let ((v, m2), p) = at_key("k").put(&"w".to_string(), &m).unwrap();
        assert_eq!(v, "w");
        assert_eq!(m2, map(&[("k", "w")]));
        assert!(p.test(&map(&[("k", "w")])));
        assert!(!p.test(&map(&[("k", "z")])));
    }

    #[test]
    fn lens_pure_examples() {
        let l: Lens<KvMap, Value, i64> = lens_pure(5);
        let m = map(&[("a", "b")]);
        assert_eq!(l.get(&m), Some(5));
        let ((v, m2), p) = l.put(&"u".to_string(), &m).unwrap();
        assert_eq!((v, &m2), (5, &m));
        assert!(p.test(&m) && p.test(&KvMap::new()));
    }

    #[test]
    fn at_keys_examples() {
        let ks = vec!["a".to_string(), "b".to_string()];
        let vals = vec!["1".to_string(), "2".to_string()];
        let ((vs, m), p) = at_keys(&ks).put(&vals, &KvMap::new()).unwrap();
        assert_eq!(vs, vals);
        assert_eq!(m, map(&[("a", "1"), ("b", "2")]));
        assert!(p.test(&m));

        // Fewer values than keys fails.
        assert!(at_keys(&ks).put(&vec!["1".to_string()], &KvMap::new()).is_none());

        // Surplus values are ignored.
        let one_key = vec!["a".to_string()];
        let ((vs, m), _) = at_keys(&one_key)
            .put(&vec!["1".to_string(), "2".to_string()], &KvMap::new())
            .unwrap();
        assert_eq!(vs, vec!["1".to_string()]);
        assert_eq!(m, map(&[("a", "1")]));
    }

    #[test]
    fn root_examples() {
        assert_eq!(root_l().get(&Tree::Leaf), Some(None));
        assert_eq!(root_l().get(&t0()), Some(Some(1)));

        let one = Tree::node(Tree::Leaf, 1, Tree::Leaf);
        let ((_, t), _) = root_l().put(&None, &one).unwrap();
        assert_eq!(t, Tree::Leaf);

        let ((_, t), p) = root_l().put(&Some(5), &Tree::Leaf).unwrap();
        assert_eq!(t, Tree::node(Tree::Leaf, 5, Tree::Leaf));
        assert!(p.test(&t));
    }

    #[test]
    fn right_examples() {
        let t = t0();
        assert_eq!(right_l().get(&t), Some(Tree::node(Tree::Leaf, 2, Tree::Leaf)));
        assert_eq!(right_l().get(&Tree::Leaf), None);
        assert!(right_l().put(&Tree::Leaf, &Tree::Leaf).is_none());
    }

    #[test]
    fn spine_get_t0() {
        assert_eq!(spine_l().get(&t0()), Some(vec![1, 2]));
        assert_eq!(spine_l().get(&Tree::Leaf), Some(vec![]));
    }

    #[test]
    fn spine_put_t0() {
        let ((spine, t), p) = spine_l().put(&vec![3, 4, 5], &t0()).unwrap();
        assert_eq!(spine, vec![3, 4, 5]);
        let expected = Tree::node(
            Tree::node(Tree::Leaf, 0, Tree::Leaf),
            3,
            Tree::node(Tree::Leaf, 4, Tree::node(Tree::Leaf, 5, Tree::Leaf)),
        );
        assert_eq!(t, expected);
        assert!(p.test(&t));
    }

    #[test]
    fn compose_right_spine() {
        let l = compose_vv(right_l(), spine_l());
        assert_eq!(l.get(&t0()), Some(vec![2]));
        assert_eq!(l.get(&Tree::Leaf), None);

        let ((spine, t), _) = l.put(&vec![9], &t0()).unwrap();
        assert_eq!(spine, vec![9]);
        assert_eq!(
            t,
            Tree::node(Tree::node(Tree::Leaf, 0, Tree::Leaf), 1, Tree::node(Tree::Leaf, 9, Tree::Leaf))
        );
    }

    #[test]
    fn purify_examples() {
        let m = map(&[("x", "y")]);
        assert_eq!(
            lens_purify(m.clone(), &at_key("k")).apply(&"v".to_string()),
            Some("v".to_string())
        );
        let ks = vec!["a".to_string(), "b".to_string()];
        let vals = vec!["1".to_string(), "2".to_string()];
        assert_eq!(lens_purify(m.clone(), &at_keys(&ks)).apply(&vals), Some(vals));
        let l: Lens<KvMap, Value, i64> = lens_pure(3);
        assert_eq!(lens_purify(m, &l).apply(&"u".to_string()), Some(3));
    }

    #[test]
    fn kv_format_round_trip() {
        let m = map(&[("a", "1"), ("b", "2")]);
        let text = render_kv_map(&m).unwrap();
        assert_eq!(text, "a=1\nb=2\n");
        assert_eq!(parse_kv_map(&text), Ok(m));
        assert_eq!(parse_kv_map(""), Ok(KvMap::new()));
        assert!(parse_kv_map("noequals").is_err());
        assert!(parse_kv_map("a=1\na=2").is_err());
        assert!(render_kv_map(&map(&[("a=b", "c")])).is_err());
    }
}
