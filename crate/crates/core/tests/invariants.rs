use glweight::perm::{enumerate, format_perm, parse_perm, EnumKind, Notation};
use glweight::{ClassKey, Engine, Permutation, Specialization};
use proptest::prelude::*;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

#[test]
fn statistics_are_class_invariants() {
    for m in 0..=7 {
        for a in enumerate(EnumKind::All, m).unwrap() {
            let key = ClassKey::of(&a);
            let b = a.cyclic_shift();
            assert_eq!(ClassKey::of(&b), key, "{a}");
            assert_eq!(b.ascents(), a.ascents(), "{a}");
            assert_eq!(b.num_cycles(), a.num_cycles(), "{a}");
            assert_eq!(b.faces(), a.faces(), "{a}");
            assert_eq!(b.is_positive(), a.is_positive(), "{a}");
        }
    }
}

proptest! {
    #[test]
    fn notation_round_trips(a in permutation(9)) {
        for notation in [Notation::Cycles, Notation::OneLine] {
            prop_assert_eq!(parse_perm(&format_perm(&a, notation), notation).unwrap(), a.clone());
        }
    }

    #[test]
    fn class_key_respects_factor_moves(a in permutation(4), b in permutation(4), s in 0usize..4, t in 0usize..4) {
        let key = ClassKey::of(&a.concat(&b));
        let shifted = a.cyclic_shift_by(s % a.len().max(1)).concat(&b.cyclic_shift_by(t % b.len().max(1)));
        prop_assert_eq!(ClassKey::of(&shifted), key.clone());
        prop_assert_eq!(ClassKey::of(&b.concat(&a)), key);
    }

    #[test]
    fn wgl_is_a_class_function_and_multiplicative(a in permutation(4), b in permutation(3)) {
        let engine = Engine::new();
        let w = engine.wgl(&a).unwrap();
        prop_assert_eq!(engine.wgl(&a.cyclic_shift()).unwrap(), w.clone());
        prop_assert_eq!(engine.wgl(&a.concat(&b)).unwrap(), &w * &engine.wgl(&b).unwrap());
    }

    #[test]
    fn faces_and_shifted_specializations(a in permutation(6)) {
        let engine = Engine::new();
        let (m, c, f) = (a.len() as i32, a.num_cycles() as i32, a.faces() as i32);
        prop_assert_eq!(engine.specialize(&a, Specialization::Faces).unwrap(), glweight::Poly::n_pow(f - 1));
        prop_assert_eq!(engine.specialize(&a, Specialization::Shifted).unwrap(), glweight::Poly::n_pow(m + c));
    }

    #[test]
    fn memo_survives_export(a in permutation(6)) {
        let engine = Engine::new();
        let w = engine.wgl(&a).unwrap();
        let json = serde_json::to_string(&engine.export_memo()).unwrap();
        let fresh = Engine::new();
        fresh.import_memo(serde_json::from_str(&json).unwrap());
        let cached = fresh.cached_classes();
        prop_assert_eq!(fresh.wgl(&a).unwrap(), w);
        prop_assert_eq!(fresh.cached_classes(), cached);
    }
}
