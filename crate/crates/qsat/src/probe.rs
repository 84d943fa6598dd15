//! Seeded soundness probes: random products of conjugated relators must
//! evaluate to the identity in their own quotient.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsat_core::quotient::MarkedQuotient;
use qsat_core::realize::Realization;
use qsat_core::word::{Letter, Word};

pub fn random_word(rng: &mut impl Rng, rank: u32, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let letters = (0..len).map(|_| Letter::new(rng.random_range(1..=rank), rng.random_bool(0.5)));
    Word::reduce(letters, rank).expect("generators in range")
}

/// A product of `factors` conjugates of relators (scheme members `1..=max_index`),
/// each possibly inverted. `None` if the relator set is empty.
pub fn relator_product(rng: &mut impl Rng, q: &MarkedQuotient, factors: usize, max_index: i64) -> Option<Word> {
    let r = q.relators();
    let pool = r.finite().len() + r.schemes().len();
    if pool == 0 {
        return None;
    }
    let rank = q.rank();
    let mut out = Word::identity(rank);
    for _ in 0..factors {
        let pick = rng.random_range(0..pool);
        let rel = match r.finite().get(pick) {
            Some(w) => w.clone(),
            None => r.schemes()[pick - r.finite().len()].member(rng.random_range(1..=max_index)).expect("i >= 1"),
        };
        let rel = if rng.random_bool(0.5) { rel.invert() } else { rel };
        let c = random_word(rng, rank, 6);
        out = out.multiply(&rel.conjugate(&c).expect("same rank")).expect("same rank");
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeFailure {
    pub vertex: String,
    pub word: Word,
    pub image: String,
}

/// Runs `count` probes spread over the vertices; returns the failures.
pub fn soundness_probes(r: &Realization, seed: u64, count: usize) -> Vec<ProbeFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = r.dag().len();
    let mut failures = Vec::new();
    for i in 0..count {
        let v = i % n;
        let q = r.quotient(v);
        let factors = rng.random_range(1..=4);
        let Some(w) = relator_product(&mut rng, q, factors, 5) else { continue };
        let image = q.eval(&w).expect("same rank");
        if !image.is_identity() {
            failures.push(ProbeFailure { vertex: r.dag().id(v).into(), word: w, image: image.to_string() });
        }
    }
    failures
}
