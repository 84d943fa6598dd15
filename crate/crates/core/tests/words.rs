use proptest::prelude::*;
use qsat_core::word::{Hom, Letter, Word};

fn raw_letters(rank: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..max_len)
}

fn word(rank: u32) -> impl Strategy<Value = Word> {
    raw_letters(rank, 12).prop_map(move |ls| Word::reduce(ls, rank).unwrap())
}

// Reduction by repeated scanning until nothing cancels.
fn naive_reduce(mut ls: Vec<Letter>) -> Vec<Letter> {
    loop {
        let Some(i) = ls.windows(2).position(|p| p[0].cancels(p[1])) else { return ls };
        ls.drain(i..i + 2);
    }
}

proptest! {
    #[test]
    fn reduction_matches_naive(ls in raw_letters(3, 20)) {
        let w = Word::reduce(ls.clone(), 3).unwrap();
        prop_assert_eq!(w.letters().to_vec(), naive_reduce(ls));
    }

    #[test]
    fn group_laws(a in word(3), b in word(3), c in word(3)) {
        let e = Word::identity(3);
        prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        prop_assert_eq!(a.multiply(&e).unwrap(), a.clone());
        prop_assert_eq!(e.multiply(&a).unwrap(), a.clone());
        prop_assert!(a.multiply(&a.invert()).unwrap().is_identity());
        prop_assert_eq!(a.multiply(&b).unwrap().invert(), b.invert().multiply(&a.invert()).unwrap());
    }

    #[test]
    fn parse_display_round_trip(a in word(4)) {
        prop_assert_eq!(Word::parse(&a.to_string(), 4).unwrap(), a);
    }

    #[test]
    fn conjugates_and_commutators(a in word(2), b in word(2)) {
        let conj = b.invert().multiply(&a).unwrap().multiply(&b).unwrap();
        prop_assert_eq!(a.conjugate(&b).unwrap(), conj);
        let comm = a.invert().multiply(&b.invert()).unwrap().multiply(&a).unwrap().multiply(&b).unwrap();
        prop_assert_eq!(a.commutator(&b).unwrap(), comm);
        prop_assert!(a.commutator(&b).unwrap().exponent_vector().iter().all(|&x| x == 0));
    }

    #[test]
    fn powers(a in word(2), m in -4i64..5, n in -4i64..5) {
        prop_assert_eq!(a.pow(m).multiply(&a.pow(n)).unwrap(), a.pow(m + n));
        let expected: Vec<i64> = a.exponent_vector().iter().map(|x| x * m).collect();
        prop_assert_eq!(a.pow(m).exponent_vector(), expected);
    }

    #[test]
    fn cyclic_reduction_recomposes(a in word(3)) {
        let (core, c) = a.cyclically_reduce();
        prop_assert_eq!(core.conjugate(&c).unwrap(), a);
        if let (Some(f), Some(l)) = (core.letters().first(), core.letters().last()) {
            prop_assert!(core.len() == 1 || !f.cancels(*l));
        }
    }

    #[test]
    fn hom_is_multiplicative(imgs in prop::collection::vec(word(2), 3), a in word(3), b in word(3)) {
        let f = Hom::new(3, 2, imgs).unwrap();
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(f.apply(&ab).unwrap(), f.apply(&a).unwrap().multiply(&f.apply(&b).unwrap()).unwrap());
        prop_assert_eq!(f.apply(&a.invert()).unwrap(), f.apply(&a).unwrap().invert());
    }

    #[test]
    fn exponent_vector_is_additive(a in word(3), b in word(3)) {
        let sum: Vec<i64> = a.exponent_vector().iter().zip(b.exponent_vector()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.multiply(&b).unwrap().exponent_vector(), sum);
    }
}
