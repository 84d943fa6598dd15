//! Certificates for the three realization conditions, and their independent re-check.
//!
//! * inclusion `u <= v  =>  N_u <= N_v`: every relator of `u` evaluates to the
//!   identity in the quotient at `v`;
//! * separation `u </= v  =>  N_u </= N_v`: some relator of `u` survives in the
//!   quotient at `v`;
//! * color: `c(v) = 0` iff the relator set is scheme-free iff the quotient's
//!   structure has no lamplighter factor.
//!
//! The color condition is certified structurally. The facts relied on are
//! that `Z`, free groups and their free products are finitely presented, that
//! `Z wr Z` is not, and that a free product with a factor that is not finitely
//! presented is not finitely presented either (see [`STRUCTURAL_ASSUMPTIONS`]).
//!
//! Everything a certificate claims can be re-derived from the realization by
//! evaluating words; [`check_certificate`] does exactly that and trusts nothing
//! recorded in the certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dag::Color;
use crate::quotient::{abelianization, AbelianInvariants, LeafValue, MarkedQuotient, NormalForm};
use crate::realize::Realization;
use crate::word::Word;

pub const DEFAULT_BOUND: i64 = 5;

pub const STRUCTURAL_ASSUMPTIONS: &[&str] = &[
    "Z and finitely generated free groups are finitely presented",
    "a free product of finitely many finitely presented groups is finitely presented",
    "Z wr Z is finitely generated but not finitely presented (Baumslag)",
    "a free product with a factor that is not finitely presented is not finitely presented (factors are retracts)",
    "the normal closure of the relators [s, t^-i s t^i], i >= 1, is the kernel of F(s, t) -> Z wr Z",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("`{0}` is below `{1}`, no separation exists")]
    Comparable(String, String),
    #[error("distinctness needs two distinct vertices")]
    SameVertex,
    #[error("relator {word} of `{from}` is nontrivial in the quotient at `{to}`: {image}")]
    TraceFailed { from: String, to: String, word: Word, image: NormalForm },
    #[error("no separating relator of `{from}` against `{to}` within bound {bound}")]
    WitnessNotFound { from: String, to: String, bound: i64 },
    #[error("color structure mismatch at `{vertex}`: color {color}, scheme-free {scheme_free}, lamplighter factor {lamplighter}")]
    StructureMismatch { vertex: String, color: u8, scheme_free: bool, lamplighter: bool },
}

/// One evaluation: `word` maps to `image`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub word: Word,
    pub image: NormalForm,
}

/// How a scheme's infinitely many members are covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    /// All members are trivial: the image of `a` is trivial, or `t` is
    /// trivial, or `a` maps to a lamp configuration and `t` into the same
    /// lamplighter factor, where all lamp configurations commute.
    Exact,
    /// Only members `1..=bound` were evaluated.
    Probed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeTrace {
    pub scheme: usize,
    pub a_image: NormalForm,
    pub t_image: NormalForm,
    pub coverage: Coverage,
    /// Members `1..=bound`, in order.
    pub probes: Vec<Trace>,
}

/// Where a separation witness comes from in the source relator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Finite(usize),
    SchemeMember { scheme: usize, index: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Inclusion { finite: Vec<Trace>, schemes: Vec<SchemeTrace>, bound: i64 },
    Separation { witness: Word, provenance: Provenance, image: NormalForm },
    Color { color: Color, scheme_free: bool, lamplighter: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Inclusion,
    Separation,
    Color,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Pair(usize, usize),
    Vertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub subject: Subject,
    pub evidence: Evidence,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self.evidence {
            Evidence::Inclusion { .. } => CertificateKind::Inclusion,
            Evidence::Separation { .. } => CertificateKind::Separation,
            Evidence::Color { .. } => CertificateKind::Color,
        }
    }
}

fn eval(q: &MarkedQuotient, w: &Word) -> NormalForm {
    q.eval(w).expect("realization words share the ambient rank")
}

fn scheme_coverage(a: &NormalForm, t: &NormalForm) -> Coverage {
    if a.is_identity() || t.is_identity() {
        return Coverage::Exact;
    }
    match (a.syllables(), t.syllables()) {
        ([sa], [st]) if sa.leaf == st.leaf => match (&sa.value, &st.value) {
            (LeafValue::Lamp(x), LeafValue::Lamp(_)) if x.shift == 0 => Coverage::Exact,
            _ => Coverage::Probed,
        },
        _ => Coverage::Probed,
    }
}

pub fn certify_inclusion(r: &Realization, u: usize, v: usize, bound: i64) -> Result<Certificate, VerifyError> {
    let dag = r.dag();
    if !dag.leq_index(u, v) {
        return Err(VerifyError::NotComparable(dag.id(u).into(), dag.id(v).into()));
    }
    let target = r.quotient(v);
    let fail = |word: &Word, image: NormalForm| VerifyError::TraceFailed {
        from: dag.id(u).into(),
        to: dag.id(v).into(),
        word: word.clone(),
        image,
    };
    let source = r.quotient(u).relators();
    let mut finite = Vec::new();
    for w in source.finite() {
        let image = eval(target, w);
        if !image.is_identity() {
            return Err(fail(w, image));
        }
        finite.push(Trace { word: w.clone(), image });
    }
    let mut schemes = Vec::new();
    for (i, s) in source.schemes().iter().enumerate() {
        let a_image = eval(target, s.a());
        let t_image = eval(target, s.t());
        let mut probes = Vec::new();
        for k in 1..=bound {
            let m = s.member(k).expect("k >= 1");
            let image = eval(target, &m);
            if !image.is_identity() {
                return Err(fail(&m, image));
            }
            probes.push(Trace { word: m, image });
        }
        let coverage = scheme_coverage(&a_image, &t_image);
        schemes.push(SchemeTrace { scheme: i, a_image, t_image, coverage, probes });
    }
    Ok(Certificate { subject: Subject::Pair(u, v), evidence: Evidence::Inclusion { finite, schemes, bound } })
}

// Source relators in search order: shortest first, finite before scheme members on ties.
fn separation_candidates(q: &MarkedQuotient, bound: i64) -> Vec<(Word, Provenance)> {
    let rel = q.relators();
    let mut out: Vec<(Word, Provenance)> = rel.finite().iter().enumerate().map(|(i, w)| (w.clone(), Provenance::Finite(i))).collect();
    for (si, s) in rel.schemes().iter().enumerate() {
        for k in 1..=bound {
            out.push((s.member(k).expect("k >= 1"), Provenance::SchemeMember { scheme: si, index: k }));
        }
    }
    out.sort_by_key(|(w, _)| w.len());
    out
}

fn provenance_word(q: &MarkedQuotient, p: Provenance) -> Option<Word> {
    match p {
        Provenance::Finite(i) => q.relators().finite().get(i).cloned(),
        Provenance::SchemeMember { scheme, index } => q.relators().schemes().get(scheme)?.member(index).ok(),
    }
}

pub fn certify_separation(r: &Realization, u: usize, v: usize, bound: i64) -> Result<Certificate, VerifyError> {
    let dag = r.dag();
    if dag.leq_index(u, v) {
        return Err(VerifyError::Comparable(dag.id(u).into(), dag.id(v).into()));
    }
    let target = r.quotient(v);
    for (witness, provenance) in separation_candidates(r.quotient(u), bound) {
        let image = eval(target, &witness);
        if !image.is_identity() {
            return Ok(Certificate { subject: Subject::Pair(u, v), evidence: Evidence::Separation { witness, provenance, image } });
        }
    }
    Err(VerifyError::WitnessNotFound { from: dag.id(u).into(), to: dag.id(v).into(), bound })
}

/// `N_u != N_v` via a separation in whichever direction is not an inclusion.
pub fn certify_distinctness(r: &Realization, u: usize, v: usize, bound: i64) -> Result<Certificate, VerifyError> {
    if u == v {
        return Err(VerifyError::SameVertex);
    }
    let dag = r.dag();
    if dag.leq_index(u, v) {
        certify_separation(r, v, u, bound)
    } else if dag.leq_index(v, u) {
        certify_separation(r, u, v, bound)
    } else {
        certify_separation(r, u, v, bound).or_else(|_| certify_separation(r, v, u, bound))
    }
}

fn color_facts(r: &Realization, v: usize) -> (Color, bool, bool) {
    let q = r.quotient(v);
    (r.dag().color(v), q.relators().is_scheme_free(), q.expr().has_lamplighter())
}

fn color_consistent((color, scheme_free, lamplighter): (Color, bool, bool)) -> bool {
    let fp = color == Color::Zero;
    fp == scheme_free && fp == !lamplighter
}

pub fn certify_color(r: &Realization, v: usize) -> Result<Certificate, VerifyError> {
    let facts = color_facts(r, v);
    let (color, scheme_free, lamplighter) = facts;
    if !color_consistent(facts) {
        return Err(VerifyError::StructureMismatch { vertex: r.dag().id(v).into(), color: color.as_u8(), scheme_free, lamplighter });
    }
    Ok(Certificate { subject: Subject::Vertex(v), evidence: Evidence::Color { color, scheme_free, lamplighter } })
}

/// Outcome of re-checking a certificate; empty `mismatches` means it holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Check {
    pub mismatches: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.mismatches.push(msg);
    }
}

/// Re-runs every evaluation a certificate mentions, from the realization alone.
pub fn check_certificate(r: &Realization, c: &Certificate) -> Check {
    let mut check = Check::default();
    let n = r.dag().len();
    let in_range = match c.subject {
        Subject::Pair(u, v) => u < n && v < n,
        Subject::Vertex(v) => v < n,
    };
    if !in_range {
        check.fail(format!("subject {:?} out of range", c.subject));
        return check;
    }
    match (&c.evidence, c.subject) {
        (Evidence::Inclusion { finite, schemes, bound }, Subject::Pair(u, v)) => {
            check_inclusion(r, u, v, finite, schemes, *bound, &mut check)
        }
        (Evidence::Separation { witness, provenance, image }, Subject::Pair(u, v)) => {
            if r.dag().leq_index(u, v) {
                check.fail(format!("separation claimed for comparable pair ({u}, {v})"));
            }
            match provenance_word(r.quotient(u), *provenance) {
                Some(w) if &w == witness => {}
                Some(w) => check.fail(format!("witness {witness} differs from source relator {w}")),
                None => check.fail(format!("provenance {provenance:?} does not exist")),
            }
            let actual = r.quotient(v).eval(witness);
            match actual {
                Ok(actual) => {
                    if &actual != image {
                        check.fail(format!("witness image is {actual}, certificate says {image}"));
                    }
                    if actual.is_identity() {
                        check.fail(format!("witness {witness} is trivial in the target"));
                    }
                }
                Err(e) => check.fail(format!("witness does not evaluate: {e}")),
            }
        }
        (Evidence::Color { color, scheme_free, lamplighter }, Subject::Vertex(v)) => {
            let facts = color_facts(r, v);
            if facts != (*color, *scheme_free, *lamplighter) {
                check.fail(format!("recorded color facts {:?} differ from {:?}", (color, scheme_free, lamplighter), facts));
            }
            if !color_consistent(facts) {
                check.fail(format!("color structure inconsistent at vertex {v}: {facts:?}"));
            }
        }
        _ => check.fail(String::from("evidence does not match subject shape")),
    }
    check
}

fn check_inclusion(r: &Realization, u: usize, v: usize, finite: &[Trace], schemes: &[SchemeTrace], bound: i64, check: &mut Check) {
    if !r.dag().leq_index(u, v) {
        check.fail(format!("inclusion claimed for incomparable pair ({u}, {v})"));
    }
    if bound < 1 {
        check.fail(format!("bound {bound} < 1"));
    }
    let source = r.quotient(u).relators();
    let target = r.quotient(v);
    if finite.len() != source.finite().len() {
        check.fail(format!("{} finite traces for {} relators", finite.len(), source.finite().len()));
    }
    for (t, w) in finite.iter().zip(source.finite()) {
        if &t.word != w {
            check.fail(format!("trace word {} is not relator {w}", t.word));
        }
        verify_trivial_trace(target, t, check);
    }
    if schemes.len() != source.schemes().len() {
        check.fail(format!("{} scheme traces for {} schemes", schemes.len(), source.schemes().len()));
    }
    for (st, (i, s)) in schemes.iter().zip(source.schemes().iter().enumerate()) {
        if st.scheme != i {
            check.fail(format!("scheme trace index {} out of order", st.scheme));
        }
        let a_image = eval(target, s.a());
        let t_image = eval(target, s.t());
        if a_image != st.a_image || t_image != st.t_image {
            check.fail(format!("scheme {i}: generator images differ"));
        }
        if scheme_coverage(&a_image, &t_image) != st.coverage {
            check.fail(format!("scheme {i}: coverage claim {:?} does not hold", st.coverage));
        }
        if st.probes.len() as i64 != bound.max(0) {
            check.fail(format!("scheme {i}: {} probes for bound {bound}", st.probes.len()));
        }
        for (k, t) in st.probes.iter().enumerate() {
            let expected = s.member(k as i64 + 1).expect("k + 1 >= 1");
            if t.word != expected {
                check.fail(format!("scheme {i}: probe {} is not member {}", t.word, k + 1));
            }
            verify_trivial_trace(target, t, check);
        }
    }
}

fn verify_trivial_trace(q: &MarkedQuotient, t: &Trace, check: &mut Check) {
    match q.eval(&t.word) {
        Ok(actual) => {
            if actual != t.image {
                check.fail(format!("{} evaluates to {actual}, certificate says {}", t.word, t.image));
            }
            if !actual.is_identity() {
                check.fail(format!("{} is nontrivial: {actual}", t.word));
            }
        }
        Err(e) => check.fail(format!("{} does not evaluate: {e}", t.word)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Inclusion,
    Separation,
    Distinctness,
    Color,
    Abelianization,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass(Certificate),
    /// Abelianization agreement carries its two sides instead of a certificate.
    Agree {
        computed: AbelianInvariants,
        predicted: AbelianInvariants,
    },
    Fail(String),
    /// No witness found within the bound; never counted as a pass.
    Inconclusive(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass(_) | Status::Agree { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub kind: CheckKind,
    pub subject: Subject,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub bound: i64,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status.is_pass())
    }

    pub fn count(&self, kind: CheckKind) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.status.is_pass())
    }

    pub fn inconclusive(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, Status::Inconclusive(_))).count()
    }
}

fn settle(r: &Realization, kind: CheckKind, subject: Subject, made: Result<Certificate, VerifyError>) -> Entry {
    let status = match made {
        Ok(cert) => {
            let check = check_certificate(r, &cert);
            if check.passed() {
                Status::Pass(cert)
            } else {
                Status::Fail(check.mismatches.join("; "))
            }
        }
        Err(e @ VerifyError::WitnessNotFound { .. }) => Status::Inconclusive(format!("{e}")),
        Err(e) => Status::Fail(format!("{e}")),
    };
    Entry { kind, subject, status }
}

/// Abelianization of the relator set against the one the structure predicts.
pub fn abelianization_entry(r: &Realization, v: usize) -> Entry {
    let q = r.quotient(v);
    let computed = abelianization(r.ambient_rank(), q.relators());
    let predicted = q.expr().predicted_abelianization();
    let status = if computed == predicted {
        Status::Agree { computed, predicted }
    } else {
        Status::Fail(format!("relators give {computed:?}, structure predicts {predicted:?}"))
    };
    Entry { kind: CheckKind::Abelianization, subject: Subject::Vertex(v), status }
}

/// All three conditions over all vertices and pairs, plus the abelianization cross-check.
pub fn verify_all(r: &Realization, bound: i64) -> Report {
    let n = r.dag().len();
    let mut entries = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let subject = Subject::Pair(u, v);
            if r.dag().leq_index(u, v) {
                entries.push(settle(r, CheckKind::Inclusion, subject, certify_inclusion(r, u, v, bound)));
            } else {
                entries.push(settle(r, CheckKind::Separation, subject, certify_separation(r, u, v, bound)));
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            let made = certify_distinctness(r, u, v, bound);
            entries.push(settle(r, CheckKind::Distinctness, Subject::Pair(u, v), made));
        }
    }
    for v in 0..n {
        entries.push(settle(r, CheckKind::Color, Subject::Vertex(v), certify_color(r, v)));
    }
    for v in 0..n {
        entries.push(abelianization_entry(r, v));
    }
    Report { bound, entries }
}

/// Sorted ids of vertices whose relators evaluate nontrivially in their own quotient.
pub fn unsound_vertices(r: &Realization, bound: i64) -> Vec<usize> {
    (0..r.dag().len()).filter(|&v| !r.quotient(v).unsound_relators(bound).is_empty()).collect()
}
