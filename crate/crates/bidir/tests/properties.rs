//! Property-based tests over arbitrary inputs, complementing the seeded
//! suites in `bidir::suites`.

use proptest::prelude::*;

use bidir::bigen::{bst, check_bst};
use bidir::biparser::{oracle_parse_string, oracle_print_string, string_bp};
use bidir::lens::{parse_kv_map, render_kv_map, spine_l, KvMap};
use bidir::partial::{partial_compose, PartialFn};
use bidir::tree::{parse_tree, print_tree, Tree};

fn arb_tree() -> impl Strategy<Value = Tree> {
    let leaf = Just(Tree::Leaf);
    leaf.prop_recursive(4, 32, 2, |inner| {
        (inner.clone(), any::<i64>(), inner)
            .prop_map(|(l, n, r)| Tree::node(l, n, r))
    })
}

fn fn_pool() -> Vec<PartialFn<i64, i64>> {
    vec![
        PartialFn::new(|x: &i64| x.checked_add(1)),
        PartialFn::new(|x: &i64| x.checked_mul(2)),
        PartialFn::new(|x: &i64| if x % 2 == 0 { Some(x / 2) } else { None }),
        PartialFn::new(|_| None),
    ]
}

proptest! {
    #[test]
    fn partial_compose_is_associative(
        fi in 0usize..4, gi in 0usize..4, hi in 0usize..4, x in any::<i64>(),
    ) {
        let pool = fn_pool();
        let (f, g, h) = (pool[fi].clone(), pool[gi].clone(), pool[hi].clone());
        let lhs = partial_compose(partial_compose(f.clone(), g.clone()), h.clone());
        let rhs = partial_compose(f, partial_compose(g, h));
        prop_assert_eq!(lhs.apply(&x), rhs.apply(&x));
    }

    #[test]
    fn oracle_print_then_parse_is_identity(s in ".{0,60}") {
        let enc = oracle_print_string(&s);
        prop_assert_eq!(oracle_parse_string(&enc), Some((s, String::new())));
    }

    #[test]
    fn string_backward_round_trips(x in ".{0,60}", suffix in ".{0,20}") {
        let p = string_bp();
        let (_, enc) = p.print(&x).expect("string printing is total");
        prop_assert_eq!(p.parse(&format!("{enc}{suffix}")), Some((x, suffix)));
    }

    #[test]
    fn string_parse_consumes_a_prefix(s in ".{0,60}") {
        if let Some((_, rest)) = string_bp().parse(&s) {
            prop_assert!(s.ends_with(&rest));
        }
    }

    #[test]
    fn tree_text_round_trips(t in arb_tree()) {
        prop_assert_eq!(parse_tree(&print_tree(&t)), Ok(t));
    }

    #[test]
    fn kv_text_round_trips(
        entries in proptest::collection::btree_map("[a-z]{1,5}", "[a-zA-Z0-9 ]{0,5}", 0..6),
    ) {
        let m: KvMap = entries;
        let text = render_kv_map(&m).expect("keys and values are in-format");
        prop_assert_eq!(parse_kv_map(&text), Ok(m));
    }

    #[test]
    fn spine_put_get_round_trips(t in arb_tree(), spine in proptest::collection::vec(any::<i64>(), 0..6)) {
        let l = spine_l();
        let ((_, t2), p) = l.put(&spine, &t).expect("spine put is total");
        if p.test(&t2) {
            prop_assert_eq!(l.get(&t2), Some(spine));
        }
    }

    #[test]
    fn bst_predicate_agrees_with_oracle(t in arb_tree()) {
        prop_assert_eq!(bst(0, 3).to_predicate(&t), check_bst(0, 3, &t));
    }
}
