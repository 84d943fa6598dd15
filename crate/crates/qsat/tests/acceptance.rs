//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Every randomized part is seeded.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsat_core::cep::{bundled, free_counterexample_demo, FiniteGroup};
use qsat_core::dag::{enumerate_colored_dags, Color, ColoredDag};
use qsat_core::quotient::{abelianization, smith_normal_form, IntMatrix, NormalForm};
use qsat_core::realize::{build_order, realize, Realization};
use qsat_core::stallings::SubgroupGraph;
use qsat_core::verify::{certify_inclusion, certify_separation, check_certificate, verify_all, Evidence, DEFAULT_BOUND};
use qsat_core::word::{Letter, Word};

use qsat::format::RealizationJson;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_dags() -> Vec<ColoredDag> {
    (1..=3).flat_map(|n| enumerate_colored_dags(n).unwrap()).collect()
}

/// Random DAG: a random linear order of "1".."n", each forward pair an edge with probability 0.4.
fn random_dag(rng: &mut ChaCha8Rng, n: usize) -> ColoredDag {
    let ids: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.4) {
                edges.push((ids[order[i]].as_str(), ids[order[j]].as_str()));
            }
        }
    }
    let vs: Vec<(&str, Option<u8>)> = ids.iter().map(|id| (id.as_str(), Some(rng.random_range(0..=1u8)))).collect();
    ColoredDag::from_labeled(&vs, &edges).unwrap()
}

fn verify_batch(dags: &[ColoredDag]) -> Result<(), String> {
    for d in dags {
        let r = realize(d).map_err(|e| format!("{d}: {e}"))?;
        ensure(r.ambient_rank() as usize == 2 * d.len(), || format!("{d}: ambient rank {}", r.ambient_rank()))?;
        let rep = verify_all(&r, DEFAULT_BOUND);
        ensure(rep.passed() && rep.inconclusive() == 0, || format!("{d}: {:?}", rep.failures().next()))?;
    }
    Ok(())
}

fn exhaustive() -> Outcome {
    let start = Instant::now();
    let dags = small_dags();
    let counts: Vec<usize> = (1..=3).map(|n| dags.iter().filter(|d| d.len() == n).count()).collect();
    ensure(counts == [2, 12, 200], || format!("enumeration counts {counts:?}"))?;
    verify_batch(&dags)?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("214 DAGs (2 + 12 + 200) verified at B = 5, 0 inconclusive, {t:.2?}"))
}

fn sampled() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut dags: Vec<ColoredDag> = (0..100).map(|_| random_dag(&mut rng, 4)).collect();
    dags.extend((0..25).map(|_| random_dag(&mut rng, 5)));
    verify_batch(&dags)?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("100 order-4 DAGs over F8 and 25 order-5 DAGs over F10 verified, {t:.2?}"))
}

fn counterexample() -> Outcome {
    let c = free_counterexample_demo();
    let problems = c.check();
    ensure(problems.is_empty(), || format!("{problems:?}"))?;
    // independently: b^-1 a b and a generate H, phi separates a from <<R>>_H, both die mod <<a>>
    let a = Word::parse("x1", 2).unwrap();
    let r = Word::parse("x2^-1 x1 x2", 2).unwrap();
    ensure(c.relator == r && c.h_generators == [a.clone(), r.clone()], || "wrong H or R".into())?;
    ensure(c.phi_of_a == 1 && c.phi_of_relator == 0, || "phi values".into())?;
    ensure(c.killed_images == ["1", "1"], || format!("{:?}", c.killed_images))?;
    // a tampered copy must be rejected
    let mut t = c.clone();
    t.phi_on_basis.iter_mut().for_each(|x| *x = 1);
    ensure(!t.check().is_empty(), || "tampered certificate accepted".into())?;
    Ok("<<b^-1 a b>>_H < H = H ∩ <<b^-1 a b>>_G certified; phi(a) = 1, phi(R) = 0; tampered copy rejected".into())
}

// Brute-force normal closure straight from the definition.
fn naive_normal_closure(g: &FiniteGroup, ambient: &BTreeSet<u32>, seed: &BTreeSet<u32>) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = seed.iter().copied().chain([0]).collect();
    loop {
        let mut next = set.clone();
        for &x in &set {
            for &k in ambient {
                next.insert(g.mul(g.mul(g.inv(k), x), k));
            }
            for &y in &set {
                next.insert(g.mul(x, y));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// CEP decided from the definition: every subset R of H.
fn naive_cep(g: &FiniteGroup, h: &BTreeSet<u32>) -> bool {
    let whole: BTreeSet<u32> = (0..g.order() as u32).collect();
    let elems: Vec<u32> = h.iter().copied().collect();
    (0u64..1 << elems.len()).all(|mask| {
        let r: BTreeSet<u32> = (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
        let in_h = naive_normal_closure(g, h, &r);
        let in_g = naive_normal_closure(g, &whole, &r);
        in_h == in_g.intersection(h).copied().collect()
    })
}

fn cep_suite() -> Outcome {
    let s4 = bundled("S4").unwrap();
    let d4 = s4.subgroup_by_names(&["(1 2 3 4)", "(1 3)"]).unwrap();
    let v = s4.is_cep(&d4).unwrap();
    ensure(!v.holds, || "CEP(S4, D4) reported true".into())?;
    let w = v.counterexample.ok_or("no witness")?;
    let whole: BTreeSet<u32> = (0..24).collect();
    let h: BTreeSet<u32> = d4.elements().collect();
    let n: BTreeSet<u32> = w.n.elements().collect();
    ensure(n.iter().all(|&x| h.contains(&x)) && naive_normal_closure(&s4, &h, &n) == n, || "witness not normal in H".into())?;
    let closure = naive_normal_closure(&s4, &whole, &n);
    let meet: BTreeSet<u32> = closure.intersection(&h).copied().collect();
    ensure(meet != n && meet == w.intersection.elements().collect(), || "witness does not recompute".into())?;
    let c4: BTreeSet<u32> = s4.subgroup_by_names(&["(1 2 3 4)"]).unwrap().elements().collect();
    ensure(naive_normal_closure(&s4, &whole, &c4).len() == 24, || "<<4-cycle>> != S4".into())?;
    ensure(!naive_cep(&s4, &h), || "definition says CEP(S4, D4)".into())?;

    let s3 = bundled("S3").unwrap();
    let a3 = s3.subgroup_by_names(&["(1 2 3)"]).unwrap();
    ensure(s3.is_cep(&a3).unwrap().holds, || "CEP(S3, A3) reported false".into())?;
    ensure(naive_cep(&s3, &a3.elements().collect()), || "definition says not CEP(S3, A3)".into())?;

    // lattice reduction agrees with the definition on every subgroup of the small groups
    let mut pairs = 0;
    for name in ["S3", "D4", "Q8", "C2xC2"] {
        let g = bundled(name).unwrap();
        for h in g.subgroups_within(&g.whole()) {
            let fast = g.is_cep(&h).unwrap().holds;
            ensure(fast == naive_cep(&g, &h.elements().collect()), || format!("{name}: reduction disagrees"))?;
            pairs += 1;
        }
    }
    let mut chains = 0;
    for name in ["S3", "A4", "S4", "Q8"] {
        let rep = bundled(name).unwrap().cep_transitivity_scan();
        ensure(rep.violations.is_empty(), || format!("{name}: {:?}", rep.violations))?;
        chains += rep.chains;
    }
    Ok(format!(
        "CEP(S4, D4) = false with witness of order {} (H ∩ <<N>> of order {}); CEP(S3, A3) = true; \
         {pairs} pairs match the definition; {chains} chains over S3, A4, S4, Q8, 0 transitivity violations",
        n.len(),
        meet.len()
    ))
}

fn random_word(rng: &mut ChaCha8Rng, rank: u32, min: usize, max: usize) -> Word {
    loop {
        let len = rng.random_range(min..=max);
        let w = Word::reduce((0..len).map(|_| Letter::new(rng.random_range(1..=rank), rng.random_bool(0.5))), rank).unwrap();
        if w.len() >= min {
            return w;
        }
    }
}

fn words_up_to(rank: u32, len: usize) -> Vec<Word> {
    let mut all = vec![Word::identity(rank)];
    let mut layer = all.clone();
    let letters: Vec<Letter> = (1..=rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters().last().is_some_and(|m| m.cancels(l)) {
                    continue;
                }
                next.push(Word::reduce(w.letters().iter().copied().chain([l]), rank).unwrap());
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

type NielsenKey = (usize, Vec<Letter>, Vec<Letter>, Word);

// Length, then the smaller and larger of the initial halves of w and w^-1.
fn nielsen_key(w: &Word) -> NielsenKey {
    let inv = w.invert();
    let half = w.len().div_ceil(2);
    let (l, r) = (w.letters()[..half].to_vec(), inv.letters()[..half].to_vec());
    let first = w.clone().min(inv);
    if l <= r {
        (w.len(), l, r, first)
    } else {
        (w.len(), r, l, first)
    }
}

/// Nielsen-reduces a generating set by greedy elementary transformations,
/// then checks the reduction conditions outright. For a Nielsen-reduced set a
/// freely reduced product of `k` generators has length at least `k`.
fn nielsen_reduce(gens: &[Word]) -> Result<Vec<Word>, String> {
    let mut y: Vec<Word> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    loop {
        let mut changed = false;
        for i in 0..y.len() {
            for j in 0..y.len() {
                if i == j {
                    continue;
                }
                for other in [y[j].clone(), y[j].invert()] {
                    for cand in [other.multiply(&y[i]).unwrap(), y[i].multiply(&other).unwrap()] {
                        if nielsen_key(&cand) < nielsen_key(&y[i]) {
                            y[i] = cand;
                            changed = true;
                        }
                    }
                }
            }
        }
        y.retain(|w| !w.is_identity());
        if !changed {
            break;
        }
    }
    let pm: Vec<(usize, Word)> = y.iter().enumerate().flat_map(|(i, w)| [(2 * i, w.clone()), (2 * i + 1, w.invert())]).collect();
    let inverse = |a: usize, b: usize| a ^ 1 == b;
    for (a, x) in &pm {
        for (b, z) in &pm {
            if inverse(*a, *b) {
                continue;
            }
            let xz = x.multiply(z).unwrap();
            if xz.len() < x.len().max(z.len()) {
                return Err(format!("N1 fails for {x}, {z}"));
            }
            for (c, w) in &pm {
                if inverse(*b, *c) {
                    continue;
                }
                if xz.multiply(w).unwrap().len() + z.len() <= x.len() + w.len() {
                    return Err(format!("N2 fails for {x}, {z}, {w}"));
                }
            }
        }
    }
    Ok(y)
}

/// Every element of `<gens>` of length at most `max_len`, from reduced
/// products of at most `max_len` Nielsen generators.
fn nielsen_members(rank: u32, gens: &[Word], max_len: usize) -> Result<BTreeSet<Word>, String> {
    let y = nielsen_reduce(gens)?;
    let pm: Vec<Word> = y.iter().flat_map(|w| [w.clone(), w.invert()]).collect();
    let mut found = BTreeSet::from([Word::identity(rank)]);
    let mut layer: Vec<(usize, Word)> = vec![(usize::MAX, Word::identity(rank))];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (last, w) in &layer {
            for (i, g) in pm.iter().enumerate() {
                if *last != usize::MAX && i == last ^ 1 {
                    continue;
                }
                let p = w.multiply(g).unwrap();
                if p.len() <= max_len {
                    found.insert(p.clone());
                }
                next.push((i, p));
            }
        }
        layer = next;
    }
    Ok(found)
}

fn stallings_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (f2, f3) = (words_up_to(2, 6), words_up_to(3, 6));
    let mut checked = 0usize;
    let mut orders = 0usize;
    for case in 0..200 {
        let rank = if case % 2 == 0 { 2 } else { 3 };
        let k = rng.random_range(1..=3);
        let gens: Vec<Word> = (0..k).map(|_| random_word(&mut rng, rank, 1, 4)).collect();
        let g = SubgroupGraph::build(rank, &gens).unwrap();
        let universe = if rank == 2 { &f2 } else { &f3 };
        let accepted: BTreeSet<Word> = universe.iter().filter(|w| g.contains(w).unwrap()).cloned().collect();
        let members = nielsen_members(rank, &gens, 6).map_err(|e| format!("case {case}: {e}"))?;
        ensure(members == accepted, || {
            let diff: Vec<String> = accepted.symmetric_difference(&members).take(3).map(|w| w.to_string()).collect();
            format!("case {case}, H = <{gens:?}>: disagreement on {diff:?}")
        })?;
        checked += universe.len();

        let n: usize = gens.iter().map(Word::len).sum();
        for _ in 0..10 {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            ensure(SubgroupGraph::build_with_edge_order(rank, &gens, &order).unwrap() == g, || {
                format!("case {case}: fold order changes the graph")
            })?;
            orders += 1;
        }
    }
    Ok(format!("200 subgroups, {checked} membership queries of length <= 6 agree with Nielsen enumeration; {orders} fold orders confluent"))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn widen(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// Product in `i128`: transform entries fit `i64`, their products need not.
fn wide_product(ms: &[&[Vec<i64>]]) -> Vec<Vec<i128>> {
    ms[1..].iter().fold(widen(ms[0]), |acc, m| {
        let m = widen(m);
        acc.iter().map(|row| (0..m[0].len()).map(|j| row.iter().zip(&m).map(|(x, r)| x * r[j]).sum()).collect()).collect()
    })
}

/// Invariant factors from gcds of minors.
fn invariant_factors(a: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (a.len(), a[0].len());
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=r.min(c) {
        let mut d = 0;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect()).collect();
                d = gcd(d, det(&m));
            }
        }
        if d == 0 {
            out.resize(r.min(c), 0);
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

fn algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..200 {
        let (r, c) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let sparse = rng.random_bool(0.3);
        let rows: Vec<Vec<i64>> =
            (0..r).map(|_| (0..c).map(|_| if sparse && rng.random_bool(0.5) { 0 } else { rng.random_range(-12..=12) }).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure(wide_product(&[&s.u.to_rows(), &rows, &s.v.to_rows()]) == widen(&s.d.to_rows()), || {
            format!("case {case}: U A V != D for {rows:?}")
        })?;
        ensure(s.u.determinant().abs() == 1 && s.v.determinant().abs() == 1, || format!("case {case}: not unimodular"))?;
        let d = s.d.to_rows();
        let diagonal_only = d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| i == j || x == 0));
        ensure(diagonal_only, || format!("case {case}: D not diagonal"))?;
        let diag = s.diagonal();
        let chain = diag.iter().all(|&x| x >= 0) && diag.windows(2).all(|w| w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        ensure(chain, || format!("case {case}: divisibility chain broken: {diag:?}"))?;
        let expected = invariant_factors(&rows);
        ensure(diag.iter().map(|&x| x as i128).collect::<Vec<_>>() == expected, || {
            format!("case {case}: {diag:?} vs determinantal {expected:?}")
        })?;
    }
    let mut vertices = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let dags: Vec<ColoredDag> = small_dags().into_iter().chain((0..20).map(|_| random_dag(&mut rng, 5))).collect();
    for d in &dags {
        let r = realize(d).unwrap();
        for (v, q) in r.quotients().iter().enumerate() {
            let computed = abelianization(r.ambient_rank(), q.relators());
            let predicted = q.expr().predicted_abelianization();
            ensure(computed == predicted, || format!("{d}, vertex {}: {computed:?} vs {predicted:?}", d.id(v)))?;
            vertices += 1;
        }
    }
    Ok(format!("200 matrices up to 6x6: U A V = D, |det U| = |det V| = 1, chain holds, matches gcd-of-minors; {vertices} vertex abelianizations match"))
}

fn conjugated_relator_product(rng: &mut ChaCha8Rng, r: &Realization, v: usize) -> Option<Word> {
    let q = r.quotient(v);
    let rel = q.relators();
    let pool = rel.finite().len() + rel.schemes().len();
    if pool == 0 {
        return None;
    }
    let rank = r.ambient_rank();
    let mut out = Word::identity(rank);
    for _ in 0..rng.random_range(1..=5) {
        let i = rng.random_range(0..pool);
        let w = match rel.finite().get(i) {
            Some(w) => w.clone(),
            None => rel.schemes()[i - rel.finite().len()].member(rng.random_range(1..=5)).unwrap(),
        };
        let w = if rng.random_bool(0.5) { w.invert() } else { w };
        let c = random_word(rng, rank, 0, 8);
        out = out.multiply(&c.invert().multiply(&w).unwrap().multiply(&c).unwrap()).unwrap();
    }
    Some(out)
}

fn soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dags: Vec<ColoredDag> = small_dags().into_iter().chain((0..30).map(|_| random_dag(&mut rng, 4))).collect();
    let reals: Vec<Realization> = dags.iter().map(|d| realize(d).unwrap()).collect();
    let mut products = 0;
    let mut with_schemes = 0;
    while products < 1000 {
        let r = &reals[rng.random_range(0..reals.len())];
        let v = rng.random_range(0..r.dag().len());
        let Some(w) = conjugated_relator_product(&mut rng, r, v) else { continue };
        let image = r.quotient(v).eval(&w).unwrap();
        ensure(image.is_identity(), || format!("{}: {w} -> {image}", r.dag()))?;
        products += 1;
        with_schemes += usize::from(!r.quotient(v).relators().is_scheme_free());
    }
    // u not below v: x_{2k} for v built k-th is a relator of u and survives in G/N_v
    let mut witnesses = 0;
    for r in &reals {
        let d = r.dag();
        let order = build_order(d).unwrap();
        for u in 0..d.len() {
            for v in 0..d.len() {
                if u == v || d.leq_index(u, v) {
                    continue;
                }
                let k = order.iter().position(|&x| x == v).unwrap() as u32 + 1;
                let z = Word::generator(r.ambient_rank(), 2 * k).unwrap();
                ensure(r.quotient(u).relators().finite().contains(&z), || format!("{d}: x{} not a relator of {}", 2 * k, d.id(u)))?;
                ensure(r.quotient(v).eval(&z).unwrap() != NormalForm::identity(), || format!("{d}: x{} dies at {}", 2 * k, d.id(v)))?;
                witnesses += 1;
            }
        }
    }
    Ok(format!("1000 relator products ({with_schemes} in quotients with schemes) trivial; {witnesses} x_2k witnesses nontrivial"))
}

fn run_cli(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_qsat")).args(args).output().unwrap().status.code().unwrap()
}

fn negative_controls() -> Outcome {
    let mut tampered = 0;
    let mut dropped = 0;
    let mut recolored = 0;
    for d in small_dags().iter().filter(|d| d.len() >= 2) {
        let r = realize(d).unwrap();
        let n = d.len();
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if d.leq_index(u, v) {
                    let mut c = certify_inclusion(&r, u, v, DEFAULT_BOUND).unwrap();
                    // first finite trace, else first scheme probe; nothing to tamper if both are absent
                    let Evidence::Inclusion { finite, schemes, .. } = &mut c.evidence else { unreachable!() };
                    let Some(t) = finite.first_mut().or_else(|| schemes.first_mut().and_then(|s| s.probes.first_mut())) else {
                        continue;
                    };
                    t.word = t.word.multiply(&Word::generator(r.ambient_rank(), 1).unwrap()).unwrap();
                    t.image = NormalForm::identity();
                    ensure(!check_certificate(&r, &c).passed(), || format!("{d}: tampered inclusion accepted"))?;
                } else {
                    let mut c = certify_separation(&r, u, v, DEFAULT_BOUND).unwrap();
                    if let Evidence::Separation { image, .. } = &mut c.evidence {
                        *image = NormalForm::identity();
                    }
                    ensure(!check_certificate(&r, &c).passed(), || format!("{d}: tampered separation accepted"))?;
                }
                tampered += 1;
            }
        }
        for v in 0..n {
            for i in 0..r.quotient(v).relators().finite().len() {
                let mut m = r.clone();
                m.quotient_mut(v).relators_mut().remove_finite(i);
                ensure(!verify_all(&m, DEFAULT_BOUND).passed(), || format!("{d}: dropped relator {i} at {} accepted", d.id(v)))?;
                dropped += 1;
            }
            let mut colors = d.colors().to_vec();
            colors[v] = if colors[v] == Color::Zero { Color::One } else { Color::Zero };
            let mutated = r.with_dag(ColoredDag::new(d.ids().to_vec(), colors, r.dag().edges().to_vec()));
            ensure(!verify_all(&mutated, DEFAULT_BOUND).passed(), || format!("{d}: recolored {} accepted", d.id(v)))?;
            recolored += 1;
        }
    }

    // the same mutations through the command line exit 1
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = ColoredDag::from_labeled(&[("u", Some(0)), ("w", Some(1))], &[("u", "w")]).unwrap();
    let good = RealizationJson::from_realization(&realize(&d).unwrap());
    let mut cases = Vec::new();
    let mut m = good.clone();
    m.vertices[0].relators.finite.pop();
    cases.push(("dropped", m));
    let mut m = good.clone();
    m.dag.vertices[1].color = Some(0);
    cases.push(("recolored", m));
    let mut codes = Vec::new();
    for (name, m) in std::iter::once(("intact", good)).chain(cases) {
        let p = dir.path().join(format!("{name}.json"));
        std::fs::write(&p, serde_json::to_string(&m).unwrap()).unwrap();
        let out = dir.path().join(name);
        codes.push(run_cli(&["verify", "--input", p.to_str().unwrap(), "--out", out.to_str().unwrap()]));
    }
    ensure(codes == [0, 1, 1], || format!("CLI exit codes {codes:?}, expected [0, 1, 1]"))?;
    Ok(format!("{tampered} tampered certificates, {dropped} dropped relators, {recolored} recolorings rejected; CLI exits {codes:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("exhaustive realization", exhaustive),
        ("sampled scale", sampled),
        ("free-group counterexample", counterexample),
        ("finite CEP suite", cep_suite),
        ("Stallings oracle equivalence", stallings_oracle),
        ("algebraic exactness", algebra),
        ("word-problem soundness", soundness),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let line = match &res {
            Ok(m) => format!("criterion {}: PASS  {name}: {m} [{:.2?}]", i + 1, start.elapsed()),
            Err(m) => format!("criterion {}: FAIL  {name}: {m}", i + 1),
        };
        failed += usize::from(res.is_err());
        println!("{line}");
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
