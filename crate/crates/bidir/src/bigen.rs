//! Bidirectional generators: a seeded random generator paired with a
//! checker.
//!
//! The forward direction draws a value from an explicit PRNG state; the
//! backward direction maps a pre-view to an optional member of the
//! generated set, so `check` doubles as a predicate via [`to_predicate`].
//! Generation is pure given the `Rng` value: equal seeds give equal values.

use std::rc::Rc;

use crate::partial::PartialFn;
use crate::profmonad::{ExtensionalEq, FailureLift, Profmonad};
use crate::tree::Tree;

/// Deterministic 64-bit PRNG state (splitmix64), threaded functionally:
/// each draw returns the value and the advanced state.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng { state: seed }
    }

    pub fn next_u64(self) -> (u64, Rng) {
        let state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 31), Rng { state })
    }

    /// Uniform in `[0, 1)`, 53 bits of precision.
    pub fn next_unit_f64(self) -> (f64, Rng) {
        let (x, rng) = self.next_u64();
        ((x >> 11) as f64 * (1.0 / (1u64 << 53) as f64), rng)
    }

    /// Uniform on the inclusive range `[lo, hi]`.
    pub fn next_in_range(self, lo: i64, hi: i64) -> (i64, Rng) {
        assert!(lo <= hi, "empty range");
        let width = (hi as i128 - lo as i128 + 1) as u128;
        let (x, rng) = self.next_u64();
        let offset = (x as u128 % width) as i128;
        ((lo as i128 + offset) as i64, rng)
    }
}

pub struct Bigen<U: 'static, V: 'static> {
    gen: Rc<dyn Fn(Rng) -> (V, Rng)>,
    chk: Rc<dyn Fn(&U) -> Option<V>>,
}

impl<U, V> Clone for Bigen<U, V> {
    fn clone(&self) -> Self {
        Bigen { gen: Rc::clone(&self.gen), chk: Rc::clone(&self.chk) }
    }
}

pub fn mk_g<U, V>(
    gen: impl Fn(Rng) -> (V, Rng) + 'static,
    chk: impl Fn(&U) -> Option<V> + 'static,
) -> Bigen<U, V> {
    Bigen { gen: Rc::new(gen), chk: Rc::new(chk) }
}

/// An aligned bigenerator from a generator and a predicate: the checker
/// accepts `y` iff `pred(y)` holds.
pub fn mk_aligned_g<V: Clone>(
    gen: impl Fn(Rng) -> (V, Rng) + 'static,
    pred: impl Fn(&V) -> bool + 'static,
) -> Bigen<V, V> {
    mk_g(gen, move |y: &V| if pred(y) { Some(y.clone()) } else { None })
}

impl<U, V> Bigen<U, V> {
    pub fn generate(&self, rng: Rng) -> (V, Rng) {
        (self.gen)(rng)
    }

    pub fn check(&self, u: &U) -> Option<V> {
        (self.chk)(u)
    }

    /// True iff the checker succeeds on `u`.
    pub fn to_predicate(&self, u: &U) -> bool {
        self.check(u).is_some()
    }

    /// Yields `x` without consuming randomness.
    pub fn pure(x: V) -> Bigen<U, V>
    where
        V: Clone,
    {
        let x2 = x.clone();
        mk_g(move |rng| (x.clone(), rng), move |_| Some(x2.clone()))
    }

    pub fn bind<W>(self, k: impl Fn(&V) -> Bigen<U, W> + 'static) -> Bigen<U, W> {
        self.bind_rc(Rc::new(k))
    }

    pub fn bind_rc<W>(self, k: Rc<dyn Fn(&V) -> Bigen<U, W>>) -> Bigen<U, W> {
        let gen_p = Rc::clone(&self.gen);
        let chk_p = Rc::clone(&self.chk);
        let k2 = Rc::clone(&k);
        mk_g(
            move |rng| {
                let (v, rng) = gen_p(rng);
                k(&v).generate(rng)
            },
            move |u| {
                let v = chk_p(u)?;
                k2(&v).check(u)
            },
        )
    }

    pub fn comap<T: 'static>(self, f: PartialFn<T, U>) -> Bigen<T, V> {
        let chk = Rc::clone(&self.chk);
        Bigen {
            gen: Rc::clone(&self.gen),
            chk: Rc::new(move |t: &T| f.apply(t).and_then(|u| chk(&u))),
        }
    }
}

pub fn g_pure<U: 'static, V: Clone + 'static>(x: V) -> Bigen<U, V> {
    Bigen::pure(x)
}

pub fn g_bind<U: 'static, V: 'static, W: 'static>(
    g: Bigen<U, V>,
    k: impl Fn(&V) -> Bigen<U, W> + 'static,
) -> Bigen<U, W> {
    g.bind(k)
}

pub fn g_comap<T: 'static, U: 'static, V: 'static>(
    f: PartialFn<T, U>,
    g: Bigen<U, V>,
) -> Bigen<T, V> {
    g.comap(f)
}

/// Bernoulli coin: true with probability `p` (uniform draw in `[0,1)`,
/// true iff strictly below `p`). The checker accepts everything.
pub fn g_bool(p: f64) -> Bigen<bool, bool> {
    mk_aligned_g(
        move |rng| {
            let (x, rng) = rng.next_unit_f64();
            (x < p, rng)
        },
        |_| true,
    )
}

/// Uniform integer on the inclusive range; the checker is range membership.
pub fn in_range(lo: i64, hi: i64) -> Bigen<i64, i64> {
    mk_aligned_g(
        move |rng| rng.next_in_range(lo, hi),
        move |x: &i64| lo <= *x && *x <= hi,
    )
}

/// Always generates a leaf; the checker accepts only leaves.
pub fn leaf() -> Bigen<Tree, Tree> {
    mk_aligned_g(|rng| (Tree::Leaf, rng), Tree::is_leaf)
}

fn node_value() -> PartialFn<Tree, i64> {
    PartialFn::new(|t: &Tree| t.label())
}

fn node_left() -> PartialFn<Tree, Tree> {
    PartialFn::new(|t: &Tree| t.left().cloned())
}

fn node_right() -> PartialFn<Tree, Tree> {
    PartialFn::new(|t: &Tree| t.right().cloned())
}

/// Binary search trees over labels in `[lo, hi]`. Generation flips a coin
/// for the leaf case and recurses on strictly narrower ranges; the checker
/// replays the same structure over a pre-view tree.
pub fn bst(lo: i64, hi: i64) -> Bigen<Tree, Tree> {
    if lo > hi {
        return leaf();
    }
    let is_leaf = PartialFn::total(|t: &Tree| t.is_leaf());
    g_bool(0.5).comap(is_leaf).bind(move |leaf_case: &bool| {
        if *leaf_case {
            Bigen::pure(Tree::Leaf)
        } else {
            in_range(lo, hi).comap(node_value()).bind(move |n: &i64| {
                let n = *n;
                bst(lo, n - 1).comap(node_left()).bind(move |l: &Tree| {
                    let l = l.clone();
                    bst(n + 1, hi).comap(node_right()).bind(move |r: &Tree| {
                        Bigen::pure(Tree::node(l.clone(), n, r.clone()))
                    })
                })
            })
        }
    })
}

/// Directly-coded BST check with range narrowing. Independent of the
/// bigenerator path; used as its oracle.
pub fn check_bst(lo: i64, hi: i64, t: &Tree) -> bool {
    match t {
        Tree::Leaf => true,
        Tree::Node(l, n, r) => {
            lo <= *n && *n <= hi && check_bst(lo, n - 1, l) && check_bst(n + 1, hi, r)
        }
    }
}

/// Exhaustively enumerates every BST over labels in `[lo, hi]`. Intended
/// for small ranges only.
pub fn enumerate_bsts(lo: i64, hi: i64) -> Vec<Tree> {
    let mut out = vec![Tree::Leaf];
    if lo > hi {
        return out;
    }
    for n in lo..=hi {
        for l in enumerate_bsts(lo, n - 1) {
            for r in enumerate_bsts(n + 1, hi) {
                out.push(Tree::node(l.clone(), n, r));
            }
        }
    }
    out
}

/// Marker type: bigenerators as a monadic profunctor.
pub struct GenP;

impl Profmonad for GenP {
    type P<U: 'static, V: 'static> = Bigen<U, V>;

    fn pure<U: 'static, V: Clone + 'static>(x: V) -> Bigen<U, V> {
        Bigen::pure(x)
    }

    fn bind<U: 'static, V: 'static, W: 'static>(
        p: Bigen<U, V>,
        k: Rc<dyn Fn(&V) -> Bigen<U, W>>,
    ) -> Bigen<U, W> {
        p.bind_rc(k)
    }

    fn comap<U: 'static, V: 'static, W: 'static>(
        f: PartialFn<U, V>,
        p: Bigen<V, W>,
    ) -> Bigen<U, W> {
        p.comap(f)
    }
}

impl FailureLift for GenP {
    // The backward effect is plain optionality; to_failure is the identity.
    type Eff<A: 'static> = Option<A>;

    fn to_failure<A: Clone + 'static>(x: Option<A>) -> Option<A> {
        x
    }
}

/// Probe sets for extensional comparison of bigenerators: seeds drive the
/// generator, pre-views the checker.
pub struct BigenSubject<U> {
    seeds: Vec<u64>,
    pre_views: Vec<U>,
}

impl<U> BigenSubject<U> {
    pub fn new(seeds: Vec<u64>, pre_views: Vec<U>) -> Self {
        assert!(!seeds.is_empty() && !pre_views.is_empty(), "probe sets must be nonempty");
        BigenSubject { seeds, pre_views }
    }
}

impl<U: 'static> ExtensionalEq<GenP, U> for BigenSubject<U> {
    fn equiv<V>(&self, a: &Bigen<U, V>, b: &Bigen<U, V>) -> bool
    where
        V: Clone + PartialEq + 'static,
    {
        self.seeds.iter().all(|&seed| {
            let (va, ra) = a.generate(Rng::new(seed));
            let (vb, rb) = b.generate(Rng::new(seed));
            va == vb && ra == rb
        }) && self.pre_views.iter().all(|u| a.check(u) == b.check(u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::t0;

    #[test]
    fn rng_is_deterministic() {
        let (a, _) = Rng::new(42).next_u64();
        let (b, _) = Rng::new(42).next_u64();
        assert_eq!(a, b);
    }

    #[test]
    fn pure_consumes_no_randomness() {
        let rng = Rng::new(7);
        let (v, rng2) = g_pure::<Tree, i64>(7).generate(rng);
        assert_eq!(v, 7);
        assert_eq!(rng2, rng);
    }

    #[test]
    fn bool_edge_cases() {
        let (t, _) = g_bool(1.0).generate(Rng::new(1));
        assert!(t);
        let (f, _) = g_bool(0.0).generate(Rng::new(1));
        assert!(!f);
        assert!(g_bool(0.5).to_predicate(&false));
    }

    #[test]
    fn in_range_examples() {
        assert!(in_range(0, 10).to_predicate(&5));
        assert!(!in_range(0, 10).to_predicate(&11));
        let (v, _) = in_range(3, 3).generate(Rng::new(99));
        assert_eq!(v, 3);
    }

    #[test]
    fn leaf_examples() {
        let rng = Rng::new(0);
        let (v, rng2) = leaf().generate(rng);
        assert_eq!(v, Tree::Leaf);
        assert_eq!(rng2, rng);
        assert_eq!(leaf().check(&Tree::Leaf), Some(Tree::Leaf));
        assert_eq!(leaf().check(&t0()), None);
    }

    #[test]
    fn comap_failure_propagates() {
        let g = g_comap(crate::partial::safe_head::<i64>(), g_pure(1));
        assert_eq!(g.check(&vec![]), None);
    }

    #[test]
    fn bst_predicate_examples() {
        assert!(bst(0, 20).to_predicate(&t0()));
        let bad = Tree::node(Tree::Leaf, 5, Tree::node(Tree::Leaf, 3, Tree::Leaf));
        assert!(!bst(0, 20).to_predicate(&bad));
    }

    #[test]
    fn bst_empty_range_generates_leaf() {
        let (v, _) = bst(5, 4).generate(Rng::new(3));
        assert_eq!(v, Tree::Leaf);
    }

    #[test]
    fn check_bst_examples() {
        assert!(check_bst(0, 20, &t0()));
        assert!(check_bst(0, 20, &Tree::Leaf));
        assert!(!check_bst(0, 0, &Tree::node(Tree::Leaf, 1, Tree::Leaf)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_bsts(1, 0).len(), 1);
        assert_eq!(enumerate_bsts(0, 0).len(), 2);
        assert_eq!(enumerate_bsts(0, 3).len(), 51);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let mut trees = enumerate_bsts(0, 3);
        trees.sort();
        let len = trees.len();
        trees.dedup();
        assert_eq!(trees.len(), len);
    }
}
