//! Biparsers: a forward text parser paired with a backward printer.
//!
//! The forward direction maps text to an optional value plus the unconsumed
//! remainder; the backward direction maps a pre-view to an optional value
//! plus the emitted text. Both directions are pure and deterministic, and
//! the pair is a monadic profunctor: `bind` threads the remainder forwards
//! and concatenates emissions backwards (both prints observing the same
//! pre-view), while `comap` rewrites only the backward direction.
//!
//! Text is a sequence of unicode scalar values; all lengths count scalar
//! values, not bytes.

use std::rc::Rc;

use crate::partial::{str_head, str_tail, safe_head, safe_tail, PartialFn};
use crate::profmonad::{ExtensionalEq, FailureLift, Profmonad, Purify};

pub struct Biparser<U: 'static, V: 'static> {
    fwd: Rc<dyn Fn(&str) -> Option<(V, String)>>,
    bwd: Rc<dyn Fn(&U) -> Option<(V, String)>>,
}

impl<U, V> Clone for Biparser<U, V> {
    fn clone(&self) -> Self {
        Biparser { fwd: Rc::clone(&self.fwd), bwd: Rc::clone(&self.bwd) }
    }
}

/// Wraps a forward parser and a backward printer. Both sides are
/// failure-capable.
pub fn mk_biparser<U, V>(
    fwd: impl Fn(&str) -> Option<(V, String)> + 'static,
    bwd: impl Fn(&U) -> Option<(V, String)> + 'static,
) -> Biparser<U, V> {
    Biparser { fwd: Rc::new(fwd), bwd: Rc::new(bwd) }
}

impl<U, V> Biparser<U, V> {
    /// Runs the forward direction on `s`, yielding the parsed value and the
    /// unconsumed suffix.
    pub fn parse(&self, s: &str) -> Option<(V, String)> {
        (self.fwd)(s)
    }

    /// Runs the backward direction on `u`, yielding the printed value and
    /// the emitted text.
    pub fn print(&self, u: &U) -> Option<(V, String)> {
        (self.bwd)(u)
    }

    /// Consumes nothing, emits nothing, yields `x`.
    pub fn pure(x: V) -> Biparser<U, V>
    where
        V: Clone,
    {
        let x2 = x.clone();
        mk_biparser(
            move |s| Some((x.clone(), s.to_string())),
            move |_| Some((x2.clone(), String::new())),
        )
    }

    /// Fails in both directions.
    pub fn fail() -> Biparser<U, V> {
        mk_biparser(|_| None, |_| None)
    }

    /// Sequential composition. Forward feeds the remainder of `self` into
    /// the continuation's parser; backward runs both printers on the same
    /// pre-view and concatenates their emissions.
    pub fn bind<W>(self, k: impl Fn(&V) -> Biparser<U, W> + 'static) -> Biparser<U, W> {
        self.bind_rc(Rc::new(k))
    }

    pub fn bind_rc<W>(self, k: Rc<dyn Fn(&V) -> Biparser<U, W>>) -> Biparser<U, W> {
        let fwd_p = Rc::clone(&self.fwd);
        let bwd_p = Rc::clone(&self.bwd);
        let k2 = Rc::clone(&k);
        mk_biparser(
            move |s| {
                let (v, rest) = fwd_p(s)?;
                k(&v).parse(&rest)
            },
            move |u| {
                let (v, emitted) = bwd_p(u)?;
                let (w, emitted2) = k2(&v).print(u)?;
                Some((w, format!("{emitted}{emitted2}")))
            },
        )
    }

    /// Pre-composes the backward direction with `f`; the forward direction
    /// is unchanged.
    pub fn comap<T: 'static>(self, f: PartialFn<T, U>) -> Biparser<T, V> {
        let bwd = Rc::clone(&self.bwd);
        Biparser {
            fwd: Rc::clone(&self.fwd),
            bwd: Rc::new(move |t: &T| f.apply(t).and_then(|u| bwd(&u))),
        }
    }
}

/// Delays construction, for recursively defined biparsers.
fn defer<U, V>(mk: impl Fn() -> Biparser<U, V> + 'static) -> Biparser<U, V> {
    let mk = Rc::new(mk);
    let mk2 = Rc::clone(&mk);
    mk_biparser(move |s| mk().parse(s), move |u| mk2().print(u))
}

/// A single character. Parsing fails on empty input; printing emits the
/// one-character text.
pub fn char_bp() -> Biparser<char, char> {
    mk_biparser(
        |s| {
            let mut it = s.chars();
            let c = it.next()?;
            Some((c, it.as_str().to_string()))
        },
        |c: &char| Some((*c, c.to_string())),
    )
}

/// A run of decimal digits terminated by a single space, one character at a
/// time. The value includes the trailing space. The backward direction
/// expects a pre-view of exactly the same shape and prints it verbatim.
pub fn digits() -> Biparser<String, String> {
    char_bp().comap(str_head()).bind(|d| {
        let d = *d;
        if d.is_ascii_digit() {
            defer(digits)
                .comap(str_tail())
                .bind(move |rest| Biparser::pure(format!("{d}{rest}")))
        } else if d == ' ' {
            Biparser::pure(" ".to_string())
        } else {
            Biparser::fail()
        }
    })
}

/// A nonnegative decimal integer followed by a single space. Printing is
/// canonical: no sign, no leading zeros, `0` for zero.
pub fn int() -> Biparser<i64, i64> {
    let printed_int = PartialFn::new(|n: &i64| {
        if *n < 0 {
            None
        } else {
            Some(format!("{n} "))
        }
    });
    digits().comap(printed_int).bind(|ds: &String| {
        let run = ds.strip_suffix(' ').unwrap_or(ds);
        if run.is_empty() {
            return Biparser::fail();
        }
        match run.parse::<i64>() {
            Ok(n) => Biparser::pure(n),
            Err(_) => Biparser::fail(),
        }
    })
}

/// Runs `p` exactly `n` times. The backward direction prints the first `n`
/// elements of the pre-view list and fails if it is shorter than `n`.
pub fn replicate_bp<U, V>(n: usize, p: Biparser<U, V>) -> Biparser<Vec<U>, Vec<V>>
where
    U: Clone + 'static,
    V: Clone + 'static,
{
    if n == 0 {
        return Biparser::pure(Vec::new());
    }
    let rest = replicate_bp(n - 1, p.clone());
    p.comap(safe_head()).bind(move |v: &V| {
        let v = v.clone();
        rest.clone().comap(safe_tail()).bind(move |vs: &Vec<V>| {
            let mut out = Vec::with_capacity(vs.len() + 1);
            out.push(v.clone());
            out.extend(vs.iter().cloned());
            Biparser::pure(out)
        })
    })
}

/// Length-prefixed strings: `<decimal-length><SPACE><payload>`.
pub fn string_bp() -> Biparser<String, String> {
    let length = PartialFn::total(|s: &String| s.chars().count() as i64);
    int().comap(length).bind(|n: &i64| {
        let chars = PartialFn::total(|s: &String| s.chars().collect::<Vec<char>>());
        replicate_bp(*n as usize, char_bp())
            .comap(chars)
            .bind(|cs: &Vec<char>| Biparser::pure(cs.iter().collect::<String>()))
    })
}

/// Drops the emitted text from the backward direction.
pub fn purify<U, V>(p: &Biparser<U, V>) -> PartialFn<U, V> {
    let p = p.clone();
    PartialFn::new(move |u| p.print(u).map(|(v, _)| v))
}

/// Marker type: biparsers as a monadic profunctor.
pub struct BiparserP;

impl Profmonad for BiparserP {
    type P<U: 'static, V: 'static> = Biparser<U, V>;

    fn pure<U: 'static, V: Clone + 'static>(x: V) -> Biparser<U, V> {
        Biparser::pure(x)
    }

    fn bind<U: 'static, V: 'static, W: 'static>(
        p: Biparser<U, V>,
        k: Rc<dyn Fn(&V) -> Biparser<U, W>>,
    ) -> Biparser<U, W> {
        p.bind_rc(k)
    }

    fn comap<U: 'static, V: 'static, W: 'static>(
        f: PartialFn<U, V>,
        p: Biparser<V, W>,
    ) -> Biparser<U, W> {
        p.comap(f)
    }
}

impl FailureLift for BiparserP {
    // The backward (writer-like) effect of a biparser.
    type Eff<A: 'static> = Option<(A, String)>;

    fn to_failure<A: Clone + 'static>(x: Option<A>) -> Option<(A, String)> {
        x.map(|a| (a, String::new()))
    }
}

/// Probe sets for extensional comparison of biparsers: texts are fed to the
/// parser, pre-views to the printer.
pub struct BiparserSubject<U> {
    texts: Vec<String>,
    pre_views: Vec<U>,
}

impl<U> BiparserSubject<U> {
    pub fn new(texts: Vec<String>, pre_views: Vec<U>) -> Self {
        assert!(!texts.is_empty() && !pre_views.is_empty(), "probe sets must be nonempty");
        BiparserSubject { texts, pre_views }
    }

    pub fn pre_views(&self) -> &[U] {
        &self.pre_views
    }
}

impl<U: 'static> ExtensionalEq<BiparserP, U> for BiparserSubject<U> {
    fn equiv<V>(&self, a: &Biparser<U, V>, b: &Biparser<U, V>) -> bool
    where
        V: Clone + PartialEq + 'static,
    {
        self.texts.iter().all(|s| a.parse(s) == b.parse(s))
            && self.pre_views.iter().all(|u| a.print(u) == b.print(u))
    }
}

/// The biparser purification, as a homomorphism witness.
pub struct BiparserPurify;

impl Purify<BiparserP> for BiparserPurify {
    fn proj<U: 'static, V: 'static>(&self, p: &Biparser<U, V>) -> PartialFn<U, V> {
        purify(p)
    }
}

/// Directly-coded parser for the length-prefixed format, independent of the
/// combinator path. Used only as a cross-check oracle.
pub fn oracle_parse_string(s: &str) -> Option<(String, String)> {
    let mut it = s.chars();
    let mut run = String::new();
    let terminated = loop {
        match it.next() {
            Some(c) if c.is_ascii_digit() => run.push(c),
            Some(' ') => break true,
            _ => break false,
        }
    };
    if !terminated || run.is_empty() {
        return None;
    }
    let n: usize = run.parse().ok()?;
    let mut payload = String::new();
    for _ in 0..n {
        payload.push(it.next()?);
    }
    Some((payload, it.as_str().to_string()))
}

/// Directly-coded printer for the length-prefixed format.
pub fn oracle_print_string(x: &str) -> String {
    format!("{} {}", x.chars().count(), x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mk_biparser_constant_forward() {
        let p: Biparser<char, char> =
            mk_biparser(|s| Some(('a', s.to_string())), |c: &char| Some((*c, String::new())));
        assert_eq!(p.parse("xy"), Some(('a', "xy".to_string())));
    }

    #[test]
    fn mk_biparser_always_fail() {
        let p: Biparser<char, char> = mk_biparser(|_| None, |_| None);
        assert_eq!(p.parse("anything"), None);
        assert_eq!(p.print(&'x'), None);
    }

    #[test]
    fn char_examples() {
        assert_eq!(char_bp().parse("abc"), Some(('a', "bc".to_string())));
        assert_eq!(char_bp().print(&'x'), Some(('x', "x".to_string())));
        assert_eq!(char_bp().parse(""), None);
    }

    #[test]
    fn pure_examples() {
        let p: Biparser<char, i64> = Biparser::pure(7);
        assert_eq!(p.parse("abc"), Some((7, "abc".to_string())));
        assert_eq!(p.print(&'z'), Some((7, String::new())));
        assert_eq!(purify(&p).apply(&'z'), Some(7));
    }

    #[test]
    fn bind_right_identity_on_char() {
        let p = char_bp().bind(|c| Biparser::pure(*c));
        assert_eq!(p.parse("ab"), Some(('a', "b".to_string())));
    }

    #[test]
    fn bind_shares_pre_view_when_printing() {
        let p = char_bp().bind(|_| char_bp());
        assert_eq!(p.print(&'x'), Some(('x', "xx".to_string())));
    }

    #[test]
    fn comap_head_print() {
        let p = char_bp().comap(str_head());
        assert_eq!(p.print(&"abc".to_string()), Some(('a', "a".to_string())));
        assert_eq!(p.print(&String::new()), None);
    }

    #[test]
    fn digits_examples() {
        assert_eq!(digits().parse("123 rest"), Some(("123 ".to_string(), "rest".to_string())));
        assert_eq!(digits().parse(" x"), Some((" ".to_string(), "x".to_string())));
        assert_eq!(digits().parse(""), None);
        assert_eq!(digits().parse("12x"), None);
        assert_eq!(digits().print(&"4a ".to_string()), None);
        assert_eq!(digits().print(&"41 ".to_string()), Some(("41 ".to_string(), "41 ".to_string())));
    }

    #[test]
    fn int_examples() {
        assert_eq!(int().print(&42), Some((42, "42 ".to_string())));
        assert_eq!(int().parse("123 x"), Some((123, "x".to_string())));
        assert_eq!(int().parse(" x"), None);
        assert_eq!(int().parse("xx"), None);
        assert_eq!(int().print(&-1), None);
    }

    #[test]
    fn replicate_examples() {
        assert_eq!(
            replicate_bp(0, char_bp()).parse("abc"),
            Some((vec![], "abc".to_string()))
        );
        assert_eq!(
            replicate_bp(3, char_bp()).parse("abcd"),
            Some((vec!['a', 'b', 'c'], "d".to_string()))
        );
        // Extra elements of the pre-view are ignored.
        assert_eq!(
            replicate_bp(2, char_bp()).print(&vec!['x', 'y', 'z']),
            Some((vec!['x', 'y'], "xy".to_string()))
        );
        // Pre-view shorter than n fails at the second step.
        assert_eq!(replicate_bp(2, char_bp()).print(&vec!['a']), None);
    }

    #[test]
    fn string_unit_tests() {
        assert_eq!(
            string_bp().parse("6 lambda calculus"),
            Some(("lambda".to_string(), " calculus".to_string()))
        );
        assert_eq!(
            string_bp().print(&"SKI".to_string()),
            Some(("SKI".to_string(), "3 SKI".to_string()))
        );
        assert_eq!(string_bp().parse("0 rest"), Some((String::new(), "rest".to_string())));
        assert_eq!(
            string_bp().print(&String::new()),
            Some((String::new(), "0 ".to_string()))
        );
        assert_eq!(string_bp().parse("xx"), None);
        assert_eq!(string_bp().parse("5 ab"), None);
    }

    #[test]
    fn purify_string_is_identity() {
        assert_eq!(purify(&string_bp()).apply(&"abc".to_string()), Some("abc".to_string()));
        assert_eq!(purify(&char_bp()).apply(&'z'), Some('z'));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_print_string("SKI"), "3 SKI");
        assert_eq!(
            oracle_parse_string("6 lambda calculus"),
            Some(("lambda".to_string(), " calculus".to_string()))
        );
        assert_eq!(oracle_parse_string(" x"), None);
        assert_eq!(oracle_parse_string("5 ab"), None);
    }

    #[test]
    fn unicode_lengths_count_scalars() {
        let s = "héλ".to_string();
        assert_eq!(string_bp().print(&s), Some((s.clone(), "3 héλ".to_string())));
        assert_eq!(string_bp().parse("3 héλ!"), Some((s, "!".to_string())));
    }
}
