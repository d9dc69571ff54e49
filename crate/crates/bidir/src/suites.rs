//! Registered law and round-tripping suites.
//!
//! Every suite is deterministic given (seed, cases): random cases come from
//! the crate's own PRNG, fixed probe sets are hard-coded. A failing case is
//! reported as a counterexample. `cases = 0` runs the random suites
//! vacuously; fixed-probe law checks still run.

use std::fmt::Debug;
use std::rc::Rc;

use crate::bigen::{bst, check_bst, enumerate_bsts, in_range, leaf, BigenSubject, GenP, Rng};
use crate::biparser::{
    char_bp, digits, int, oracle_parse_string, oracle_print_string, purify, replicate_bp,
    string_bp, Biparser, BiparserP, BiparserPurify, BiparserSubject,
};
use crate::lens::{
    at_key, at_keys, lens_pure, lens_purify, root_l, spine_l, Lens, LensP, LensPurify,
    LensSubject, KvMap, SourcePredicate, Value,
};
use crate::partial::{
    partial_compose, partial_identity, safe_head, safe_tail, str_head, str_tail, PartialFn,
};
use crate::profmonad::{
    check_injective_arrow, law_comap_compose, law_comap_identity, law_monad, law_promonad,
    law_purify_homomorphism, FailureLift,
};
use crate::tree::{t0, Tree};

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn render(&self) -> String {
        if self.passed {
            format!("PASS {} ({} cases)", self.name, self.cases)
        } else {
            format!(
                "FAIL {} ({} cases): {}",
                self.name,
                self.cases,
                self.counterexample.as_deref().unwrap_or("no detail")
            )
        }
    }
}

/// Mutable convenience wrapper over the functional [`Rng`].
pub struct Stream {
    rng: Rng,
}

impl Stream {
    pub fn new(seed: u64) -> Stream {
        Stream { rng: Rng::new(seed) }
    }

    pub fn u64(&mut self) -> u64 {
        let (x, rng) = self.rng.next_u64();
        self.rng = rng;
        x
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let (x, rng) = self.rng.next_in_range(lo, hi);
        self.rng = rng;
        x
    }

    pub fn chance(&mut self, p: f64) -> bool {
        let (x, rng) = self.rng.next_unit_f64();
        self.rng = rng;
        x < p
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        let i = self.range(0, xs.len() as i64 - 1) as usize;
        &xs[i]
    }
}

fn run_cases(
    name: &str,
    seed: u64,
    cases: u64,
    mut case: impl FnMut(&mut Stream) -> Option<String>,
) -> SuiteResult {
    let mut st = Stream::new(seed);
    for i in 0..cases {
        if let Some(msg) = case(&mut st) {
            return SuiteResult {
                name: name.to_string(),
                passed: false,
                cases: i + 1,
                counterexample: Some(msg),
            };
        }
    }
    SuiteResult { name: name.to_string(), passed: true, cases, counterexample: None }
}

fn fixed(name: &str, checks: Vec<(&'static str, bool)>) -> SuiteResult {
    let cases = checks.len() as u64;
    let failure = checks.into_iter().find(|(_, ok)| !ok);
    SuiteResult {
        name: name.to_string(),
        passed: failure.is_none(),
        cases,
        counterexample: failure.map(|(desc, _)| desc.to_string()),
    }
}

// --- random test data ---

const CHAR_POOL: &[char] =
    &['a', 'b', 'c', 'z', 'Q', '0', '9', ' ', '_', 'λ', 'é', '→', 'ß'];
const KEY_POOL: &[&str] = &["a", "b", "k", "key", "z"];
const VALUE_POOL: &[&str] = &["", "1", "2", "v", "w", "val"];

pub fn rand_text(st: &mut Stream, max_len: usize) -> String {
    let len = st.range(0, max_len as i64) as usize;
    (0..len).map(|_| *st.pick(CHAR_POOL)).collect()
}

fn rand_value(st: &mut Stream) -> Value {
    st.pick(VALUE_POOL).to_string()
}

fn rand_key(st: &mut Stream) -> String {
    st.pick(KEY_POOL).to_string()
}

fn rand_map(st: &mut Stream) -> KvMap {
    let mut m = KvMap::new();
    for k in KEY_POOL {
        if st.chance(0.5) {
            let v = rand_value(st);
            m.insert(k.to_string(), v);
        }
    }
    m
}

pub fn rand_tree(st: &mut Stream, depth: usize) -> Tree {
    if depth == 0 || st.chance(0.4) {
        Tree::Leaf
    } else {
        let label = st.range(-5, 25);
        let l = rand_tree(st, depth - 1);
        let r = rand_tree(st, depth - 1);
        Tree::node(l, label, r)
    }
}

fn rand_spine(st: &mut Stream) -> Vec<i64> {
    let len = st.range(0, 6) as usize;
    (0..len).map(|_| st.range(-10, 30)).collect()
}

// --- biparser round-tripping suites ---

/// Strong backward round tripping of an aligned biparser: when printing
/// succeeds, parsing the emission plus any suffix re-yields the pre-view.
pub fn backward_rt_biparser<X>(
    name: &str,
    p: Biparser<X, X>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> X,
) -> SuiteResult
where
    X: Clone + PartialEq + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let x = gen(st);
        let suffix = rand_text(st, 20);
        let (_, s) = p.print(&x)?;
        let input = format!("{s}{suffix}");
        let got = p.parse(&input);
        if got == Some((x.clone(), suffix.clone())) {
            None
        } else {
            Some(format!("x={x:?} printed {s:?}, parse of {input:?} gave {got:?}"))
        }
    })
}

fn weak_backward_rt_biparser<U, V>(
    name: &str,
    p: Biparser<U, V>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> U,
) -> SuiteResult
where
    U: Debug + 'static,
    V: Clone + PartialEq + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let x = gen(st);
        let suffix = rand_text(st, 20);
        match p.print(&x) {
            None => None,
            Some((y, s)) => {
                let input = format!("{s}{suffix}");
                let got = p.parse(&input);
                if got == Some((y.clone(), suffix.clone())) {
                    None
                } else {
                    Some(format!("x={x:?} printed ({y:?}, {s:?}), parse of {input:?} gave {got:?}"))
                }
            }
        }
    })
}

fn weak_forward_rt_biparser<U, V>(
    name: &str,
    p: Biparser<U, V>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> U,
) -> SuiteResult
where
    U: Debug + 'static,
    V: Clone + PartialEq + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let x = gen(st);
        let suffix = rand_text(st, 20);
        let (y, s0) = match p.print(&x) {
            None => return None,
            Some(r) => r,
        };
        let s01 = format!("{s0}{suffix}");
        match p.parse(&s01) {
            Some((y1, s1)) if y1 == y => {
                if s01 == format!("{s0}{s1}") {
                    None
                } else {
                    Some(format!("x={x:?}: s01={s01:?} but s0={s0:?}, s1={s1:?}"))
                }
            }
            _ => None,
        }
    })
}

fn canonical_payload_encoding(st: &mut Stream) -> String {
    let payload = rand_text(st, 100);
    format!("{} {}", payload.chars().count(), payload)
}

fn forward_rt_string_canonical(seed: u64, cases: u64) -> SuiteResult {
    let p = string_bp();
    run_cases("biparser/forward-rt/string-canonical", seed, cases, move |st| {
        let s = canonical_payload_encoding(st);
        let (x, rest) = match p.parse(&s) {
            Some(r) => r,
            None => return Some(format!("canonical encoding {s:?} failed to parse")),
        };
        if !rest.is_empty() {
            return Some(format!("encoding {s:?} left remainder {rest:?}"));
        }
        match p.print(&x) {
            Some((_, s2)) if s2 == s => None,
            other => Some(format!("parse of {s:?} gave {x:?}, print gave {other:?}")),
        }
    })
}

fn identity_projection_string(seed: u64, cases: u64) -> SuiteResult {
    let proj = purify(&string_bp());
    run_cases("biparser/identity-projection/string", seed, cases, move |st| {
        let x = rand_text(st, 100);
        let got = proj.apply(&x);
        if got == Some(x.clone()) {
            None
        } else {
            Some(format!("purify(string)({x:?}) = {got:?}"))
        }
    })
}

fn oracle_agreement(seed: u64, cases: u64) -> SuiteResult {
    let p = string_bp();
    run_cases("biparser/oracle-agreement", seed, cases, move |st| {
        // Print side.
        let x = rand_text(st, 100);
        let combinator = p.print(&x).map(|(_, s)| s);
        if combinator.as_deref() != Some(oracle_print_string(&x).as_str()) {
            return Some(format!("print {x:?}: combinator {combinator:?} vs oracle"));
        }
        // Parse side: valid and corrupted encodings.
        let s = if st.chance(0.5) {
            canonical_payload_encoding(st)
        } else {
            rand_text(st, 30)
        };
        let got = p.parse(&s);
        let want = oracle_parse_string(&s);
        if got != want {
            return Some(format!("parse {s:?}: combinator {got:?} vs oracle {want:?}"));
        }
        None
    })
}

fn prefix_consumption(seed: u64, cases: u64) -> SuiteResult {
    let ps: Vec<(&str, Biparser<String, String>)> =
        vec![("digits", digits()), ("string", string_bp())];
    run_cases("biparser/prefix-consumption", seed, cases, move |st| {
        let s = if st.chance(0.5) {
            canonical_payload_encoding(st)
        } else {
            rand_text(st, 30)
        };
        for (name, p) in &ps {
            if let Some((_, rest)) = p.parse(&s) {
                if !s.ends_with(&rest) {
                    return Some(format!("{name}: parse of {s:?} left non-suffix {rest:?}"));
                }
            }
        }
        None
    })
}

// --- biparser law suites ---

fn string_subject() -> BiparserSubject<String> {
    BiparserSubject::new(
        vec![
            "".into(),
            "a".into(),
            "abc".into(),
            "3 SKI rest".into(),
            "42 x".into(),
            "0 ".into(),
            "12".into(),
            " x".into(),
            "007 abcdefg".into(),
        ],
        vec!["".into(), "a".into(), "SKI".into(), "42 ".into(), "12 ".into(), "héλ".into()],
    )
}

fn laws_biparser() -> SuiteResult {
    let s_string = string_subject();
    // The `comap f (pure x)` law is an equality on the domain of `f`, so
    // promonad subjects with a partial `f` probe only pre-views `f` accepts.
    let s_string_nonempty = BiparserSubject::new(
        vec!["".into(), "a".into(), "abc".into(), "42 x".into()],
        vec!["a".into(), "SKI".into(), "42 ".into(), "héλ".into()],
    );
    let s_char = BiparserSubject::new(
        vec!["".into(), "a".into(), "abc".into(), "0 x".into()],
        vec!['a', '0', ' ', 'λ'],
    );
    let s_i64 = BiparserSubject::new(
        vec!["".into(), "42 x".into(), "0 ".into(), "007 ".into(), " x".into()],
        vec![0i64, 7, 42, 100, -3],
    );

    let int_of_len: Biparser<String, i64> =
        int().comap(PartialFn::total(|s: &String| s.chars().count() as i64));
    let fail_fn: PartialFn<String, String> = PartialFn::new(|_| None);

    fixed(
        "laws/biparser",
        vec![
            ("comap-identity char", law_comap_identity::<BiparserP, _, _, _>(&s_char, &char_bp())),
            ("comap-identity string", law_comap_identity::<BiparserP, _, _, _>(&s_string, &string_bp())),
            ("comap-identity int", law_comap_identity::<BiparserP, _, _, _>(&s_i64, &int())),
            (
                "comap-compose head-after-tail",
                law_comap_compose::<BiparserP, _, _, _, _, _>(
                    &s_string,
                    str_tail(),
                    str_head(),
                    &char_bp(),
                ),
            ),
            (
                "comap-compose failing f",
                law_comap_compose::<BiparserP, _, _, _, _, _>(
                    &s_string,
                    fail_fn.clone(),
                    partial_identity::<String>(),
                    &digits(),
                ),
            ),
            (
                "monad laws char",
                law_monad::<BiparserP, _, _, _, _, _>(
                    &s_char,
                    &char_bp(),
                    Rc::new(|c: &char| Biparser::pure(c.to_string())),
                    Rc::new(|s: &String| Biparser::pure(s.chars().count() as i64)),
                    'q',
                ),
            ),
            (
                "monad laws int-upon-length",
                law_monad::<BiparserP, _, _, _, _, _>(
                    &s_string,
                    &int_of_len,
                    Rc::new(|n: &i64| Biparser::pure(n * 2)),
                    Rc::new(|n: &i64| Biparser::pure(n.to_string())),
                    5i64,
                ),
            ),
            (
                "monad laws all-pure",
                law_monad::<BiparserP, _, _, _, _, _>(
                    &s_string,
                    &Biparser::pure(1i64),
                    Rc::new(|n: &i64| Biparser::pure(*n)),
                    Rc::new(|n: &i64| Biparser::pure(*n)),
                    1i64,
                ),
            ),
            (
                "promonad laws char-upon-head",
                law_promonad::<BiparserP, _, _, _, _, _>(
                    &s_string_nonempty,
                    str_head(),
                    &char_bp(),
                    Rc::new(|c: &char| Biparser::pure(*c)),
                    'z',
                ),
            ),
            (
                "promonad laws identity f",
                law_promonad::<BiparserP, _, _, _, _, _>(
                    &s_string,
                    partial_identity::<String>(),
                    &digits(),
                    Rc::new(|ds: &String| Biparser::pure(ds.clone())),
                    " ".to_string(),
                ),
            ),
        ],
    )
}

fn purify_homomorphism_biparser() -> SuiteResult {
    let probes: Vec<String> =
        vec!["".into(), "1 ".into(), "12 ".into(), "4a ".into(), "abc".into(), "007 ".into()];
    fixed(
        "laws/purify-homomorphism/biparser",
        vec![
            (
                "digits under tail",
                law_purify_homomorphism::<BiparserP, _, _, _, _, _>(
                    &probes,
                    &BiparserPurify,
                    str_tail(),
                    &digits(),
                    Rc::new(|ds: &String| Biparser::pure(ds.chars().count() as i64)),
                    9i64,
                ),
            ),
            (
                "char under head",
                law_purify_homomorphism::<BiparserP, _, _, _, _, _>(
                    &probes,
                    &BiparserPurify,
                    str_head(),
                    &char_bp(),
                    Rc::new(|c: &char| Biparser::pure(c.to_string())),
                    "q".to_string(),
                ),
            ),
            (
                "string under identity",
                law_purify_homomorphism::<BiparserP, _, _, _, _, _>(
                    &probes,
                    &BiparserPurify,
                    partial_identity::<String>(),
                    &string_bp(),
                    Rc::new(|s: &String| Biparser::pure(s.clone())),
                    "ret".to_string(),
                ),
            ),
        ],
    )
}

fn injective_arrows() -> SuiteResult {
    let s_string = string_subject();
    let identity_ok = check_injective_arrow::<BiparserP, _, _, i64, i64>(
        &s_string,
        Rc::new(|x: &i64| Biparser::pure(*x)),
        Rc::new(|y: &i64| *y),
        &[1, 2, 3],
    );
    let constant_rejected = !check_injective_arrow::<BiparserP, _, _, i64, i64>(
        &s_string,
        Rc::new(|_: &i64| Biparser::pure(0i64)),
        Rc::new(|y: &i64| *y),
        &[1, 2],
    );
    let read_samples = vec!["0".to_string(), "00".to_string()];
    let read_arrow: Rc<dyn Fn(&String) -> Biparser<String, i64>> =
        Rc::new(|ds: &String| match ds.parse::<i64>() {
            Ok(n) => Biparser::pure(n),
            Err(_) => Biparser::fail(),
        });
    let read_rejected_show = !check_injective_arrow::<BiparserP, _, _, String, i64>(
        &s_string,
        Rc::clone(&read_arrow),
        Rc::new(|n: &i64| n.to_string()),
        &read_samples,
    );
    let read_rejected_const = !check_injective_arrow::<BiparserP, _, _, String, i64>(
        &s_string,
        read_arrow,
        Rc::new(|_: &i64| "00".to_string()),
        &read_samples,
    );
    fixed(
        "laws/injective-arrow",
        vec![
            ("accepts identity arrow", identity_ok),
            ("rejects constant arrow", constant_rejected),
            ("rejects read-decimal (show inverse)", read_rejected_show),
            ("rejects read-decimal (constant inverse)", read_rejected_const),
        ],
    )
}

// --- lens law suites ---

fn kv(pairs: &[(&str, &str)]) -> KvMap {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn lens_sources() -> Vec<KvMap> {
    vec![
        KvMap::new(),
        kv(&[("k", "v")]),
        kv(&[("a", "1"), ("b", "2")]),
        kv(&[("k", "v"), ("a", "1"), ("b", "2"), ("z", "")]),
    ]
}

fn laws_lens() -> SuiteResult {
    let values: Vec<Value> = vec!["".into(), "1".into(), "v".into(), "w".into()];
    let value_lists: Vec<Vec<Value>> =
        vec![vec![], vec!["1".into()], vec!["1".into(), "2".into()], vec!["x".into(), "".into(), "y".into()]];

    let s_value = LensSubject::new(lens_sources(), values.clone());
    let s_list = LensSubject::new(lens_sources(), value_lists);
    // Promonad subjects with a partial `f` probe only pre-views in its
    // domain (nonempty lists for safe head/tail).
    let s_list_nonempty = LensSubject::new(
        lens_sources(),
        vec![vec!["1".into()], vec!["1".into(), "2".into()], vec!["x".into(), "".into(), "y".into()]],
    );

    let ks = vec!["a".to_string(), "b".to_string()];

    fixed(
        "laws/lens",
        vec![
            ("comap-identity at_key", law_comap_identity::<LensP<KvMap>, _, _, _>(&s_value, &at_key("k"))),
            ("comap-identity at_keys", law_comap_identity::<LensP<KvMap>, _, _, _>(&s_list, &at_keys(&ks))),
            (
                "comap-compose head-after-tail",
                law_comap_compose::<LensP<KvMap>, _, _, _, _, _>(
                    &s_list,
                    safe_tail::<Value>(),
                    safe_head::<Value>(),
                    &at_key("k"),
                ),
            ),
            (
                "comap-compose failing f",
                law_comap_compose::<LensP<KvMap>, _, _, _, _, _>(
                    &s_list,
                    PartialFn::new(|_: &Vec<Value>| None),
                    partial_identity::<Vec<Value>>(),
                    &at_keys(&ks),
                ),
            ),
            (
                "monad laws at_key",
                law_monad::<LensP<KvMap>, _, _, _, _, _>(
                    &s_value,
                    &at_key("k"),
                    Rc::new(|_: &Value| at_key("b")),
                    Rc::new(|v: &Value| lens_pure(v.chars().count() as i64)),
                    "w".to_string(),
                ),
            ),
            (
                "promonad laws at_key under head",
                law_promonad::<LensP<KvMap>, _, _, _, _, _>(
                    &s_list_nonempty,
                    safe_head::<Value>(),
                    &at_key("k"),
                    Rc::new(|_: &Value| at_key("b")),
                    "y".to_string(),
                ),
            ),
            (
                "promonad laws at_keys under tail",
                law_promonad::<LensP<KvMap>, _, _, _, _, _>(
                    &s_list_nonempty,
                    safe_tail::<Value>(),
                    &at_keys(&[]),
                    Rc::new(|vs: &Vec<Value>| lens_pure(vs.len() as i64)),
                    Vec::new(),
                ),
            ),
        ],
    )
}

fn purify_homomorphism_lens() -> SuiteResult {
    let source = kv(&[("k", "v"), ("b", "2")]);
    let pr = LensPurify { source };
    let value_probes: Vec<Value> = vec!["".into(), "1".into(), "v".into(), "zz".into()];
    let list_probes: Vec<Vec<Value>> =
        vec![vec![], vec!["1".into()], vec!["1".into(), "2".into()]];
    fixed(
        "laws/purify-homomorphism/lens",
        vec![
            (
                "at_key under identity",
                law_purify_homomorphism::<LensP<KvMap>, _, _, _, _, _>(
                    &value_probes,
                    &pr,
                    partial_identity::<Value>(),
                    &at_key("k"),
                    Rc::new(|_: &Value| at_key("b")),
                    "z".to_string(),
                ),
            ),
            (
                "at_key under head, value-dependent k",
                law_purify_homomorphism::<LensP<KvMap>, _, _, _, _, _>(
                    &list_probes,
                    &pr,
                    safe_head::<Value>(),
                    &at_key("k"),
                    Rc::new(|v: &Value| lens_pure(v.clone())),
                    "q".to_string(),
                ),
            ),
        ],
    )
}

fn predicate_monoid(seed: u64, cases: u64) -> SuiteResult {
    run_cases("lens/predicate-monoid", seed, cases, move |st| {
        let sources: Vec<KvMap> = (0..4).map(|_| rand_map(st)).collect();
        let mut preds = Vec::new();
        for _ in 0..3 {
            let k = rand_key(st);
            let v = rand_value(st);
            let m = rand_map(st);
            let ((_, _), p) = at_key(&k).put(&v, &m).expect("at_key put is total");
            preds.push(p);
        }
        let (p1, p2, p3) = (&preds[0], &preds[1], &preds[2]);
        let unit = SourcePredicate::always();
        for s in &sources {
            if p1.and(&unit).test(s) != p1.test(s) || unit.and(p1).test(s) != p1.test(s) {
                return Some("monoid unit law failed".to_string());
            }
            if p1.and(p2).and(p3).test(s) != p1.and(&p2.and(p3)).test(s) {
                return Some("monoid associativity failed".to_string());
            }
        }
        None
    })
}

// --- lens round-tripping suites ---

fn lens_putget<S, X>(
    name: &str,
    l: Lens<S, X, X>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> (X, S),
) -> SuiteResult
where
    S: Clone + Debug + 'static,
    X: Clone + PartialEq + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let (x, s) = gen(st);
        match l.put(&x, &s) {
            None => None,
            Some(((_, s2), p)) => {
                if !p.test(&s2) {
                    return None;
                }
                let got = l.get(&s2);
                if got == Some(x.clone()) {
                    None
                } else {
                    Some(format!("put {x:?} into {s:?} gave {s2:?}, get = {got:?}"))
                }
            }
        }
    })
}

fn lens_getput<S, X>(
    name: &str,
    l: Lens<S, X, X>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> S,
) -> SuiteResult
where
    S: Clone + PartialEq + Debug + 'static,
    X: Clone + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let s = gen(st);
        let x = match l.get(&s) {
            None => return None,
            Some(x) => x,
        };
        match l.put(&x, &s) {
            Some(((_, s2), _)) if s2 == s => None,
            other => Some(format!(
                "get {s:?} = {x:?}, put back gave {:?}",
                other.map(|((v, s2), _)| (v, s2))
            )),
        }
    })
}

fn lens_weak_backward<S, U, V>(
    name: &str,
    l: Lens<S, U, V>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> (U, S),
    mut gen_other: impl FnMut(&mut Stream) -> S,
) -> SuiteResult
where
    S: Clone + Debug + 'static,
    U: Debug + 'static,
    V: Clone + PartialEq + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let (x, s) = gen(st);
        let ((y, s1), p) = match l.put(&x, &s) {
            None => return None,
            Some(r) => r,
        };
        let mut candidates = vec![s1];
        candidates.push(gen_other(st));
        candidates.push(gen_other(st));
        for s2 in candidates {
            if p.test(&s2) {
                let got = l.get(&s2);
                if got != Some(y.clone()) {
                    return Some(format!(
                        "put {x:?} into {s:?}: predicate holds on {s2:?} but get = {got:?}, want {y:?}"
                    ));
                }
            }
        }
        None
    })
}

fn lens_weak_forward<S, U, V>(
    name: &str,
    l: Lens<S, U, V>,
    seed: u64,
    cases: u64,
    mut gen: impl FnMut(&mut Stream) -> (U, S),
) -> SuiteResult
where
    S: Clone + PartialEq + Debug + 'static,
    U: Debug + 'static,
    V: Clone + PartialEq + Debug + 'static,
{
    run_cases(name, seed, cases, move |st| {
        let (x, s) = gen(st);
        let y = match l.get(&s) {
            None => return None,
            Some(y) => y,
        };
        match l.put(&x, &s) {
            Some(((y2, s2), _)) if y2 == y => {
                if s2 == s {
                    None
                } else {
                    Some(format!("get {s:?} = {y:?}, put {x:?} changed source to {s2:?}"))
                }
            }
            _ => None,
        }
    })
}

fn identity_projection_at_keys(seed: u64, cases: u64) -> SuiteResult {
    run_cases("lens/identity-projection/at_keys", seed, cases, move |st| {
        let len = st.range(0, 4) as usize;
        let ks: Vec<String> = (0..len).map(|_| rand_key(st)).collect();
        let vs: Vec<Value> = (0..len).map(|_| rand_value(st)).collect();
        let s = rand_map(st);
        let got = lens_purify(s.clone(), &at_keys(&ks)).apply(&vs);
        if got == Some(vs.clone()) {
            None
        } else {
            Some(format!("proj {s:?} (at_keys {ks:?}) {vs:?} = {got:?}"))
        }
    })
}

fn lens_rt_suites(seed: u64, cases: u64) -> Vec<SuiteResult> {
    let gen_key_case = |st: &mut Stream| (rand_value(st), rand_map(st));
    let gen_keys_case = |st: &mut Stream| {
        let len = st.range(0, 4) as usize;
        let _ks: Vec<String> = (0..len).map(|_| rand_key(st)).collect();
        let vs: Vec<Value> = (0..len).map(|_| rand_value(st)).collect();
        (vs, rand_map(st))
    };
    let gen_root_case = |st: &mut Stream| {
        let pre = if st.chance(0.3) { None } else { Some(st.range(-5, 25)) };
        (pre, rand_tree(st, 4))
    };
    let gen_spine_case = |st: &mut Stream| (rand_spine(st), rand_tree(st, 4));

    // Map containing every key of a fixed key list, so gets succeed.
    let covering_map = |st: &mut Stream, ks: &[String]| {
        let mut m = rand_map(st);
        for k in ks {
            let v = rand_value(st);
            m.insert(k.clone(), v);
        }
        m
    };

    let ks2 = vec!["a".to_string(), "b".to_string()];
    let ks2_get = ks2.clone();
    let ks2_weak = ks2.clone();
    let ks2_fwd = ks2.clone();

    vec![
        lens_putget("lens/l-putget/at_key", at_key("k"), seed ^ 0x11, cases, gen_key_case),
        lens_putget("lens/l-putget/at_keys", at_keys(&ks2), seed ^ 0x12, cases, move |st| {
            let vs = vec![rand_value(st), rand_value(st)];
            (vs, rand_map(st))
        }),
        lens_putget("lens/l-putget/root_l", root_l(), seed ^ 0x13, cases, gen_root_case),
        lens_putget("lens/l-putget/spine_l", spine_l(), seed ^ 0x14, cases, gen_spine_case),
        lens_getput("lens/l-getput/at_key", at_key("k"), seed ^ 0x21, cases, move |st| {
            let mut m = rand_map(st);
            let v = rand_value(st);
            m.insert("k".to_string(), v);
            m
        }),
        lens_getput("lens/l-getput/at_keys", at_keys(&ks2_get.clone()), seed ^ 0x22, cases, move |st| {
            covering_map(st, &ks2_get)
        }),
        lens_getput("lens/l-getput/root_l", root_l(), seed ^ 0x23, cases, |st| rand_tree(st, 4)),
        lens_getput("lens/l-getput/spine_l", spine_l(), seed ^ 0x24, cases, |st| rand_tree(st, 4)),
        lens_weak_backward(
            "lens/weak-backward/at_key",
            at_key("k"),
            seed ^ 0x31,
            cases,
            gen_key_case,
            rand_map,
        ),
        lens_weak_backward(
            "lens/weak-backward/at_keys",
            at_keys(&ks2_weak),
            seed ^ 0x32,
            cases,
            gen_keys_case,
            rand_map,
        ),
        lens_weak_backward(
            "lens/weak-backward/root_l",
            root_l(),
            seed ^ 0x33,
            cases,
            gen_root_case,
            |st| rand_tree(st, 4),
        ),
        lens_weak_backward(
            "lens/weak-backward/spine_l",
            spine_l(),
            seed ^ 0x34,
            cases,
            gen_spine_case,
            |st| rand_tree(st, 4),
        ),
        lens_weak_backward(
            "lens/weak-backward/at_key-under-head",
            at_key("k").comap(safe_head::<Value>()),
            seed ^ 0x35,
            cases,
            move |st| {
                let len = st.range(0, 3) as usize;
                let vs: Vec<Value> = (0..len).map(|_| rand_value(st)).collect();
                (vs, rand_map(st))
            },
            rand_map,
        ),
        lens_weak_forward(
            "lens/weak-forward/at_key",
            at_key("k"),
            seed ^ 0x41,
            cases,
            move |st| {
                let mut m = rand_map(st);
                let v = rand_value(st);
                m.insert("k".to_string(), v.clone());
                // Half the cases put back the value currently stored.
                let x = if st.chance(0.5) { v } else { rand_value(st) };
                (x, m)
            },
        ),
        lens_weak_forward(
            "lens/weak-forward/at_keys",
            at_keys(&ks2_fwd.clone()),
            seed ^ 0x42,
            cases,
            move |st| {
                let m = covering_map(st, &ks2_fwd);
                let x = if st.chance(0.5) {
                    ks2_fwd.iter().map(|k| m[k].clone()).collect()
                } else {
                    vec![rand_value(st), rand_value(st)]
                };
                (x, m)
            },
        ),
        lens_weak_forward(
            "lens/weak-forward/root_l",
            root_l(),
            seed ^ 0x43,
            cases,
            move |st| {
                let t = rand_tree(st, 4);
                let x = if st.chance(0.5) { t.label() } else { Some(st.range(-5, 25)) };
                (x, t)
            },
        ),
        lens_weak_forward(
            "lens/weak-forward/spine_l",
            spine_l(),
            seed ^ 0x44,
            cases,
            move |st| {
                let t = rand_tree(st, 4);
                let x = if st.chance(0.5) {
                    spine_l().get(&t).unwrap_or_default()
                } else {
                    rand_spine(st)
                };
                (x, t)
            },
        ),
        identity_projection_at_keys(seed ^ 0x51, cases),
        predicate_monoid(seed ^ 0x52, cases),
    ]
}

// --- bigenerator law and round-tripping suites ---

fn laws_bigen() -> SuiteResult {
    let int_subject = BigenSubject::new(vec![0, 1, 42, 1234567], vec![-1i64, 0, 3, 11]);
    let list_subject = BigenSubject::new(
        vec![0, 7, 99],
        vec![vec![], vec![1i64], vec![2, 5], vec![0, 1, 2]],
    );
    // Promonad subjects with a partial `f` probe only pre-views in its
    // domain.
    let list_subject_nonempty =
        BigenSubject::new(vec![0, 7, 99], vec![vec![1i64], vec![2, 5], vec![0, 1, 2]]);
    let tree_subject = BigenSubject::new(
        vec![0, 1, 2, 3, 99],
        vec![
            Tree::Leaf,
            t0(),
            Tree::node(Tree::Leaf, 5, Tree::node(Tree::Leaf, 3, Tree::Leaf)),
            Tree::node(Tree::Leaf, 0, Tree::node(Tree::Leaf, 2, Tree::Leaf)),
        ],
    );

    fixed(
        "laws/bigen",
        vec![
            ("comap-identity in_range", law_comap_identity::<GenP, _, _, _>(&int_subject, &in_range(0, 10))),
            ("comap-identity bst", law_comap_identity::<GenP, _, _, _>(&tree_subject, &bst(0, 20))),
            ("comap-identity leaf", law_comap_identity::<GenP, _, _, _>(&tree_subject, &leaf())),
            (
                "comap-compose head-after-tail",
                law_comap_compose::<GenP, _, _, _, _, _>(
                    &list_subject,
                    safe_tail::<i64>(),
                    safe_head::<i64>(),
                    &in_range(0, 5),
                ),
            ),
            (
                "monad laws in_range",
                law_monad::<GenP, _, _, _, _, _>(
                    &int_subject,
                    &in_range(0, 3),
                    Rc::new(|n: &i64| crate::bigen::g_pure(*n)),
                    Rc::new(|n: &i64| crate::bigen::g_pure(n + 1)),
                    2i64,
                ),
            ),
            (
                "promonad laws in_range under head",
                law_promonad::<GenP, _, _, _, _, _>(
                    &list_subject_nonempty,
                    safe_head::<i64>(),
                    &in_range(0, 5),
                    Rc::new(|n: &i64| crate::bigen::g_pure(n * 2)),
                    4i64,
                ),
            ),
        ],
    )
}

fn bigen_soundness(name: &str, lo: i64, hi: i64, seed: u64, draws: u64) -> SuiteResult {
    let g = bst(lo, hi);
    let mut rng = Rng::new(seed);
    for i in 0..draws {
        let (t, rng2) = g.generate(rng);
        rng = rng2;
        if !g.to_predicate(&t) || !check_bst(lo, hi, &t) {
            return SuiteResult {
                name: name.to_string(),
                passed: false,
                cases: i + 1,
                counterexample: Some(format!("generated non-BST {t:?}")),
            };
        }
    }
    SuiteResult { name: name.to_string(), passed: true, cases: draws, counterexample: None }
}

fn bigen_completeness(seed: u64, cases: u64) -> SuiteResult {
    let name = "bigen/completeness/bst(0,3)";
    if cases == 0 {
        return SuiteResult { name: name.into(), passed: true, cases: 0, counterexample: None };
    }
    let all: Vec<Tree> = enumerate_bsts(0, 3);
    let g = bst(0, 3);
    let mut remaining: std::collections::BTreeSet<Tree> = all.into_iter().collect();
    let cap: u64 = 200_000;
    let mut rng = Rng::new(seed);
    for i in 0..cap {
        let (t, rng2) = g.generate(rng);
        rng = rng2;
        remaining.remove(&t);
        if remaining.is_empty() {
            return SuiteResult {
                name: name.into(),
                passed: true,
                cases: i + 1,
                counterexample: None,
            };
        }
    }
    SuiteResult {
        name: name.into(),
        passed: false,
        cases: cap,
        counterexample: Some(format!("{} trees never generated, e.g. {:?}", remaining.len(), remaining.iter().next())),
    }
}

fn bigen_predicate_oracle(seed: u64, cases: u64) -> SuiteResult {
    let g = bst(0, 3);
    let enumerated = enumerate_bsts(0, 3);
    let mut checked_enumeration = cases == 0;
    run_cases("bigen/predicate-matches-check_bst", seed, cases, move |st| {
        if !checked_enumeration {
            checked_enumeration = true;
            for t in &enumerated {
                if !g.to_predicate(t) {
                    return Some(format!("enumerated BST rejected: {t:?}"));
                }
            }
        }
        let t = rand_tree(st, 4);
        let got = g.to_predicate(&t);
        let want = check_bst(0, 3, &t);
        if got == want {
            None
        } else {
            Some(format!("tree {t:?}: to_predicate={got}, check_bst={want}"))
        }
    })
}

fn bigen_weak_completeness(seed: u64, cases: u64) -> SuiteResult {
    run_cases("bigen/weak-completeness-consistency", seed, cases, move |st| {
        let t = rand_tree(st, 4);
        let g = bst(0, 3);
        if let Some(y) = g.check(&t) {
            if y != t {
                return Some(format!("checker rewrote aligned input {t:?} to {y:?}"));
            }
            if !g.to_predicate(&y) {
                return Some(format!("checker output {y:?} fails its own predicate"));
            }
        }
        let n = st.range(-5, 15);
        let r = in_range(0, 9);
        if let Some(y) = r.check(&n) {
            if y != n || !r.to_predicate(&y) {
                return Some(format!("in_range checker inconsistent on {n}"));
            }
        }
        if let Some(y) = leaf().check(&Tree::Leaf) {
            if y != Tree::Leaf {
                return Some("leaf checker rewrote Leaf".to_string());
            }
        }
        None
    })
}

fn bigen_determinism(seed: u64, cases: u64) -> SuiteResult {
    run_cases("bigen/determinism", seed, cases, move |st| {
        let s = st.u64();
        let g = bst(0, 20);
        let (a, _) = g.generate(Rng::new(s));
        let (b, _) = g.generate(Rng::new(s));
        if a == b {
            None
        } else {
            Some(format!("seed {s}: {a:?} != {b:?}"))
        }
    })
}

fn bigen_uniformity(seed: u64, cases: u64) -> SuiteResult {
    let name = "bigen/uniformity/in_range(0,3)";
    if cases == 0 {
        return SuiteResult { name: name.into(), passed: true, cases: 0, counterexample: None };
    }
    let draws: u64 = 10_000;
    let mut counts = [0u64; 4];
    let g = in_range(0, 3);
    let mut rng = Rng::new(seed);
    for _ in 0..draws {
        let (v, rng2) = g.generate(rng);
        rng = rng2;
        counts[v as usize] += 1;
    }
    let bad = counts.iter().enumerate().find(|(_, &c)| !(2200..=2800).contains(&c));
    SuiteResult {
        name: name.into(),
        passed: bad.is_none(),
        cases: draws,
        counterexample: bad.map(|(v, c)| format!("value {v} drawn {c} times out of {draws}")),
    }
}

// --- core plumbing suites ---

fn partial_compose_assoc(seed: u64, cases: u64) -> SuiteResult {
    let pool: Vec<PartialFn<i64, i64>> = vec![
        PartialFn::new(|x: &i64| Some(x + 1)),
        PartialFn::new(|x: &i64| Some(x * 2)),
        PartialFn::new(|x: &i64| if x % 2 == 0 { Some(x / 2) } else { None }),
        PartialFn::new(|_| None),
    ];
    run_cases("core/partial-compose-associativity", seed, cases, move |st| {
        let f = st.pick(&pool).clone();
        let g = st.pick(&pool).clone();
        let h = st.pick(&pool).clone();
        let x = st.range(-1000, 1000);
        let lhs = partial_compose(partial_compose(f.clone(), g.clone()), h.clone());
        let rhs = partial_compose(f, partial_compose(g, h));
        if lhs.apply(&x) == rhs.apply(&x) {
            None
        } else {
            Some(format!("associativity failed at {x}"))
        }
    })
}

fn failure_lift_laws(seed: u64, cases: u64) -> SuiteResult {
    run_cases("core/failure-lift", seed, cases, move |st| {
        let x = st.range(-100, 100);
        if BiparserP::to_failure(Some(x)) != Some((x, String::new())) {
            return Some("biparser to_failure(Some) must emit empty text".to_string());
        }
        if BiparserP::to_failure::<i64>(None).is_some() {
            return Some("biparser to_failure(None) must fail".to_string());
        }
        let s = rand_map(st);
        let lifted = <LensP<KvMap>>::to_failure(Some(x));
        match (lifted.0)(&s) {
            Some(((y, s2), p)) => {
                if y != x || s2 != s || !p.test(&s) || !p.test(&rand_map(st)) {
                    return Some("lens to_failure(Some) must keep source and unit predicate".into());
                }
            }
            None => return Some("lens to_failure(Some) must succeed".into()),
        }
        if (<LensP<KvMap>>::to_failure::<i64>(None).0)(&s).is_some() {
            return Some("lens to_failure(None) must fail".into());
        }
        if GenP::to_failure(Some(x)) != Some(x) || GenP::to_failure::<i64>(None).is_some() {
            return Some("bigen to_failure must be the identity".into());
        }
        None
    })
}

// --- registry ---

/// Mutation hook: the backward-RT suite against an arbitrary `char`-shaped
/// biparser. `run_all` passes the library `char`; tests pass broken ones.
pub fn backward_rt_char_suite(p: Biparser<char, char>, seed: u64, cases: u64) -> SuiteResult {
    backward_rt_biparser("biparser/backward-rt/char", p, seed, cases, |st| *st.pick(CHAR_POOL))
}

/// Runs every registered law and round-tripping suite. Deterministic per
/// (seed, cases); report order is fixed.
pub fn run_all(seed: u64, cases: u64) -> Vec<SuiteResult> {
    let mut out = Vec::new();

    // Core.
    out.push(partial_compose_assoc(seed ^ 0x01, cases));
    out.push(failure_lift_laws(seed ^ 0x02, cases.min(50)));

    // Law suites over fixed probe sets.
    out.push(laws_biparser());
    out.push(laws_lens());
    out.push(laws_bigen());
    out.push(purify_homomorphism_biparser());
    out.push(purify_homomorphism_lens());
    out.push(injective_arrows());

    // Biparser round tripping.
    out.push(backward_rt_char_suite(char_bp(), seed ^ 0x101, cases));
    out.push(backward_rt_biparser("biparser/backward-rt/int", int(), seed ^ 0x102, cases, |st| {
        st.range(0, 1_000_000_000)
    }));
    out.push(backward_rt_biparser(
        "biparser/backward-rt/string",
        string_bp(),
        seed ^ 0x103,
        cases,
        |st| rand_text(st, 100),
    ));
    out.push(weak_backward_rt_biparser(
        "biparser/weak-backward-rt/char",
        char_bp(),
        seed ^ 0x111,
        cases,
        |st| *st.pick(CHAR_POOL),
    ));
    out.push(weak_backward_rt_biparser(
        "biparser/weak-backward-rt/digits",
        digits(),
        seed ^ 0x112,
        cases,
        |st| {
            if st.chance(0.7) {
                let len = st.range(0, 6);
                let run: String = (0..len).map(|_| char::from(b'0' + st.range(0, 9) as u8)).collect();
                format!("{run} ")
            } else {
                rand_text(st, 6)
            }
        },
    ));
    out.push(weak_backward_rt_biparser(
        "biparser/weak-backward-rt/int",
        int(),
        seed ^ 0x113,
        cases,
        |st| st.range(-10, 1_000_000),
    ));
    out.push(weak_backward_rt_biparser(
        "biparser/weak-backward-rt/replicate",
        replicate_bp(5, char_bp()),
        seed ^ 0x114,
        cases,
        |st| {
            let len = st.range(0, 8) as usize;
            (0..len).map(|_| *st.pick(CHAR_POOL)).collect::<Vec<char>>()
        },
    ));
    out.push(weak_backward_rt_biparser(
        "biparser/weak-backward-rt/string",
        string_bp(),
        seed ^ 0x115,
        cases,
        |st| rand_text(st, 100),
    ));
    out.push(weak_backward_rt_biparser(
        "biparser/weak-backward-rt/char-under-head",
        char_bp().comap(str_head()),
        seed ^ 0x116,
        cases,
        |st| rand_text(st, 5),
    ));
    out.push(weak_forward_rt_biparser(
        "biparser/weak-forward-rt/char",
        char_bp(),
        seed ^ 0x121,
        cases,
        |st| *st.pick(CHAR_POOL),
    ));
    out.push(weak_forward_rt_biparser(
        "biparser/weak-forward-rt/digits",
        digits(),
        seed ^ 0x122,
        cases,
        |st| {
            let len = st.range(0, 6);
            let run: String = (0..len).map(|_| char::from(b'0' + st.range(0, 9) as u8)).collect();
            format!("{run} ")
        },
    ));
    out.push(weak_forward_rt_biparser(
        "biparser/weak-forward-rt/int",
        int(),
        seed ^ 0x123,
        cases,
        |st| st.range(0, 1_000_000),
    ));
    out.push(weak_forward_rt_biparser(
        "biparser/weak-forward-rt/replicate",
        replicate_bp(5, char_bp()),
        seed ^ 0x124,
        cases,
        |st| (0..8).map(|_| *st.pick(CHAR_POOL)).collect::<Vec<char>>(),
    ));
    out.push(weak_forward_rt_biparser(
        "biparser/weak-forward-rt/string",
        string_bp(),
        seed ^ 0x125,
        cases,
        |st| rand_text(st, 100),
    ));
    out.push(forward_rt_string_canonical(seed ^ 0x131, cases));
    out.push(identity_projection_string(seed ^ 0x132, cases));
    out.push(oracle_agreement(seed ^ 0x133, cases));
    out.push(prefix_consumption(seed ^ 0x134, cases));

    // Lenses.
    out.extend(lens_rt_suites(seed, if cases == 0 { 0 } else { cases.max(500) }));

    // Bigenerators.
    out.push(bigen_soundness("bigen/soundness/bst(0,3)", 0, 3, seed ^ 0x201, cases.saturating_mul(10)));
    out.push(bigen_soundness("bigen/soundness/bst(0,20)", 0, 20, seed ^ 0x202, cases.saturating_mul(10)));
    out.push(bigen_completeness(seed ^ 0x203, cases));
    out.push(bigen_predicate_oracle(seed ^ 0x204, cases));
    out.push(bigen_weak_completeness(seed ^ 0x205, cases));
    out.push(bigen_determinism(seed ^ 0x206, cases.min(20)));
    out.push(bigen_uniformity(seed ^ 0x207, cases));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biparser::mk_biparser;

    #[test]
    fn all_suites_pass_with_default_seed() {
        for r in run_all(42, 100) {
            assert!(r.passed, "{}", r.render());
        }
    }

    #[test]
    fn zero_cases_is_a_vacuous_pass() {
        for r in run_all(42, 0) {
            assert!(r.passed, "{}", r.render());
        }
    }

    #[test]
    fn broken_char_is_caught_with_counterexample() {
        // A char whose printer emits the wrong text.
        let broken = mk_biparser(
            |s: &str| {
                let mut it = s.chars();
                let c = it.next()?;
                Some((c, it.as_str().to_string()))
            },
            |c: &char| Some((*c, format!("{c}{c}"))),
        );
        let r = backward_rt_char_suite(broken, 42, 200);
        assert!(!r.passed);
        assert!(r.counterexample.is_some());
    }
}
