//! JSON file formats. Inputs are typed serde structs; reports and certificates
//! are emitted as `serde_json::Value` trees (keys come out sorted).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qsat_core::cep::{self, FiniteGroup, Perm, Subgroup};
use qsat_core::dag::ColoredDag;
use qsat_core::quotient::{CommutatorScheme, GroupExpr, Image, LeafGen, LeafValue, MarkedQuotient, NormalForm, RelatorSet};
use qsat_core::realize::{CepEmbedding, Presentation, Realization, CONDITIONAL_ON_CEP};
use qsat_core::stallings::SubgroupGraph;
use qsat_core::verify::{Certificate, Coverage, Evidence, Provenance, Report, Status, Subject, Trace, STRUCTURAL_ASSUMPTIONS};
use qsat_core::word::Word;

use crate::InputError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DagJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl DagJson {
    pub fn to_dag(&self) -> Result<ColoredDag, InputError> {
        let vs: Vec<(&str, Option<u8>)> = self.vertices.iter().map(|v| (v.id.as_str(), v.color)).collect();
        let es: Vec<(&str, &str)> = self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Ok(ColoredDag::from_labeled(&vs, &es)?)
    }

    pub fn from_dag(d: &ColoredDag) -> Self {
        DagJson {
            vertices: (0..d.len()).map(|v| VertexJson { id: d.id(v).into(), color: Some(d.color(v).as_u8()) }).collect(),
            edges: d.edges().iter().map(|&(a, b)| (d.id(a).into(), d.id(b).into())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub a: String,
    pub t: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorSetJson {
    #[serde(default)]
    pub finite: Vec<String>,
    #[serde(default)]
    pub schemes: Vec<SchemeJson>,
}

impl RelatorSetJson {
    pub fn to_relators(&self, rank: u32) -> Result<RelatorSet, InputError> {
        let finite = self.finite.iter().map(|w| Word::parse(w, rank)).collect::<Result<Vec<_>, _>>()?;
        let schemes = self
            .schemes
            .iter()
            .map(|s| Ok(CommutatorScheme::new(Word::parse(&s.a, rank)?, Word::parse(&s.t, rank)?)?))
            .collect::<Result<Vec<_>, InputError>>()?;
        Ok(RelatorSet::new(rank, finite, schemes)?)
    }

    pub fn from_relators(r: &RelatorSet) -> Self {
        RelatorSetJson {
            finite: r.finite().iter().map(Word::to_string).collect(),
            schemes: r.schemes().iter().map(|s| SchemeJson { a: s.a().to_string(), t: s.t().to_string() }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExprJson {
    Trivial,
    InfiniteCyclic,
    Free { rank: u32 },
    Lamplighter,
    FreeProduct { factors: Vec<ExprJson> },
}

impl ExprJson {
    pub fn from_expr(e: &GroupExpr) -> Self {
        match e {
            GroupExpr::Trivial => ExprJson::Trivial,
            GroupExpr::InfiniteCyclic => ExprJson::InfiniteCyclic,
            GroupExpr::FreeOfRank(r) => ExprJson::Free { rank: *r },
            GroupExpr::Lamplighter => ExprJson::Lamplighter,
            GroupExpr::FreeProduct(fs) => ExprJson::FreeProduct { factors: fs.iter().map(ExprJson::from_expr).collect() },
        }
    }

    // Kept as written: re-flattening could renumber leaves under a marking.
    pub fn to_expr(&self) -> GroupExpr {
        match self {
            ExprJson::Trivial => GroupExpr::Trivial,
            ExprJson::InfiniteCyclic => GroupExpr::InfiniteCyclic,
            ExprJson::Free { rank } => GroupExpr::FreeOfRank(*rank),
            ExprJson::Lamplighter => GroupExpr::Lamplighter,
            ExprJson::FreeProduct { factors } => GroupExpr::FreeProduct(factors.iter().map(ExprJson::to_expr).collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImageJson {
    Identity,
    Cyclic { leaf: usize, power: i64 },
    Lamp { leaf: usize },
    Shift { leaf: usize },
    Free { leaf: usize, generator: u32 },
}

impl ImageJson {
    pub fn from_image(i: &Image) -> Self {
        match *i {
            Image::Identity => ImageJson::Identity,
            Image::Leaf { leaf, gen } => match gen {
                LeafGen::Cyclic(power) => ImageJson::Cyclic { leaf, power },
                LeafGen::Lamp => ImageJson::Lamp { leaf },
                LeafGen::Shift => ImageJson::Shift { leaf },
                LeafGen::Free(generator) => ImageJson::Free { leaf, generator },
            },
        }
    }

    pub fn to_image(self) -> Image {
        let (leaf, gen) = match self {
            ImageJson::Identity => return Image::Identity,
            ImageJson::Cyclic { leaf, power } => (leaf, LeafGen::Cyclic(power)),
            ImageJson::Lamp { leaf } => (leaf, LeafGen::Lamp),
            ImageJson::Shift { leaf } => (leaf, LeafGen::Shift),
            ImageJson::Free { leaf, generator } => (leaf, LeafGen::Free(generator)),
        };
        Image::Leaf { leaf, gen }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub id: String,
    pub relators: RelatorSetJson,
    pub structure: ExprJson,
    pub marking: Vec<ImageJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub ambient_rank: u32,
    pub dag: DagJson,
    pub vertices: Vec<QuotientJson>,
}

impl RealizationJson {
    pub fn from_realization(r: &Realization) -> Self {
        let d = r.dag();
        RealizationJson {
            ambient_rank: r.ambient_rank(),
            dag: DagJson::from_dag(d),
            vertices: r
                .quotients()
                .iter()
                .enumerate()
                .map(|(v, q)| QuotientJson {
                    id: d.id(v).into(),
                    relators: RelatorSetJson::from_relators(q.relators()),
                    structure: ExprJson::from_expr(q.expr()),
                    marking: q.marking().iter().map(ImageJson::from_image).collect(),
                })
                .collect(),
        }
    }

    /// Quotients are matched to DAG vertices by id, in any order.
    pub fn to_realization(&self) -> Result<Realization, InputError> {
        let dag = self.dag.to_dag()?;
        let mut quotients = Vec::with_capacity(dag.len());
        for id in dag.ids() {
            let mut matching = self.vertices.iter().filter(|q| &q.id == id);
            let q = matching.next().ok_or_else(|| InputError::Format(format!("no quotient for vertex `{id}`")))?;
            if matching.next().is_some() {
                return Err(InputError::Format(format!("two quotients for vertex `{id}`")));
            }
            let relators = q.relators.to_relators(self.ambient_rank)?;
            let marking = q.marking.iter().map(|m| m.to_image()).collect();
            quotients.push(MarkedQuotient::new(relators, q.structure.to_expr(), marking)?);
        }
        if self.vertices.len() != dag.len() {
            return Err(InputError::Format("quotients for unknown vertices".into()));
        }
        Ok(Realization::from_parts(dag, self.ambient_rank, quotients)?)
    }
}

pub fn normal_form_json(nf: &NormalForm) -> Value {
    let syllables: Vec<Value> = nf
        .syllables()
        .iter()
        .map(|s| match &s.value {
            LeafValue::Int(k) => json!({ "leaf": s.leaf, "int": k }),
            LeafValue::Lamp(e) => json!({
                "leaf": s.leaf,
                "lamplighter": { "shift": e.shift, "lamps": e.support.iter().map(|(x, v)| [x, v]).collect::<Vec<_>>() },
            }),
            LeafValue::Free(w) => json!({ "leaf": s.leaf, "free": w.to_string() }),
        })
        .collect();
    Value::Array(syllables)
}

fn trace_json(t: &Trace) -> Value {
    json!({ "word": t.word.to_string(), "image": normal_form_json(&t.image) })
}

fn subject_json(r: &Realization, s: Subject) -> Value {
    let d = r.dag();
    match s {
        Subject::Pair(u, v) => json!({ "from": d.id(u), "to": d.id(v) }),
        Subject::Vertex(v) => json!({ "vertex": d.id(v) }),
    }
}

pub fn evidence_json(c: &Certificate) -> Value {
    match &c.evidence {
        Evidence::Inclusion { finite, schemes, bound } => json!({
            "type": "inclusion",
            "bound": bound,
            "finite": finite.iter().map(trace_json).collect::<Vec<_>>(),
            "schemes": schemes.iter().map(|s| json!({
                "scheme": s.scheme,
                "a_image": normal_form_json(&s.a_image),
                "t_image": normal_form_json(&s.t_image),
                "coverage": match s.coverage { Coverage::Exact => "exact", Coverage::Probed => "probed" },
                "probes": s.probes.iter().map(trace_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        Evidence::Separation { witness, provenance, image } => json!({
            "type": "separation",
            "witness": witness.to_string(),
            "provenance": match provenance {
                Provenance::Finite(i) => json!({ "finite": i }),
                Provenance::SchemeMember { scheme, index } => json!({ "scheme": scheme, "index": index }),
            },
            "image": normal_form_json(image),
        }),
        Evidence::Color { color, scheme_free, lamplighter } => json!({
            "type": "color",
            "color": color.as_u8(),
            "scheme_free": scheme_free,
            "lamplighter": lamplighter,
        }),
    }
}

pub fn report_json(r: &Realization, report: &Report) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let (status, body) = match &e.status {
                Status::Pass(c) => ("pass", json!({ "certificate": evidence_json(c) })),
                Status::Agree { computed, predicted } => (
                    "pass",
                    json!({
                        "computed": { "free_rank": computed.free_rank, "torsion": computed.torsion },
                        "predicted": { "free_rank": predicted.free_rank, "torsion": predicted.torsion },
                    }),
                ),
                Status::Fail(m) => ("fail", json!({ "detail": m })),
                Status::Inconclusive(m) => ("inconclusive", json!({ "detail": m })),
            };
            let mut v = json!({
                "check": format!("{:?}", e.kind).to_lowercase(),
                "subject": subject_json(r, e.subject),
                "status": status,
            });
            if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
                m.extend(b);
            }
            v
        })
        .collect();
    json!({
        "verdict": if report.passed() { "pass" } else { "fail" },
        "bound": report.bound,
        "passed": report.entries.iter().filter(|e| e.status.is_pass()).count(),
        "failed": report.failures().count() - report.inconclusive(),
        "inconclusive": report.inconclusive(),
        "assumptions": STRUCTURAL_ASSUMPTIONS,
        "entries": entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub alphabet_rank: u32,
    #[serde(default)]
    pub relators: Vec<String>,
    pub basis_words: Vec<String>,
    #[serde(default)]
    pub provenance: String,
}

impl EmbeddingJson {
    pub fn to_embedding(&self) -> Result<CepEmbedding, InputError> {
        let parse = |ws: &[String]| ws.iter().map(|w| Word::parse(w, self.alphabet_rank)).collect::<Result<Vec<_>, _>>();
        Ok(CepEmbedding {
            alphabet_rank: self.alphabet_rank,
            relators: parse(&self.relators)?,
            basis_words: parse(&self.basis_words)?,
            provenance: self.provenance.clone(),
        })
    }
}

pub fn presentations_json(e: &CepEmbedding, ps: &[Presentation]) -> Value {
    json!({
        "banner": CONDITIONAL_ON_CEP,
        "provenance": e.provenance,
        "presentations": ps.iter().map(|p| json!({
            "vertex": p.vertex,
            "alphabet_rank": p.alphabet_rank,
            "relators": p.relators.iter().map(Word::to_string).collect::<Vec<_>>(),
            "schemes": p.schemes.iter().map(|s| json!({ "a": s.a().to_string(), "t": s.t().to_string() })).collect::<Vec<_>>(),
            "finitely_presented": p.finitely_presented,
            "text": p.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// A single generator is one cycle string or a list of them, multiplied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CyclesJson {
    One(String),
    Product(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table {
        order: usize,
        table: Vec<Vec<u32>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<CyclesJson>,
    },
    Bundled {
        bundled: String,
    },
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteGroup, InputError> {
        match self {
            GroupJson::Table { order, table, names } => {
                if table.len() != *order {
                    return Err(InputError::Format(format!("order {order} but {} table rows", table.len())));
                }
                Ok(FiniteGroup::from_table(table.clone(), names.clone())?)
            }
            GroupJson::Permutations { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| {
                        let parts: Vec<&str> = match g {
                            CyclesJson::One(s) => vec![s.as_str()],
                            CyclesJson::Product(v) => v.iter().map(String::as_str).collect(),
                        };
                        parts.iter().try_fold(Perm::identity(*degree), |acc, c| Ok(acc.then(&Perm::parse(c, *degree)?)))
                    })
                    .collect::<Result<Vec<_>, cep::GroupError>>()?;
                Ok(cep::from_permutations(*degree, &gens)?)
            }
            GroupJson::Bundled { bundled } => cep::bundled(bundled)
                .ok_or_else(|| InputError::Format(format!("unknown bundled group `{bundled}`; known: {:?}", cep::BUNDLED))),
        }
    }
}

/// Input of the `cep` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CepTaskJson {
    pub group: GroupJson,
    /// Generators of `H` by element name; omitted means no pair is checked.
    #[serde(default)]
    pub subgroup: Option<Vec<String>>,
    /// Generators of `K` with `H <= K`; omitted means the whole group.
    #[serde(default)]
    pub ambient: Option<Vec<String>>,
    #[serde(default)]
    pub max_s: Option<usize>,
    #[serde(default)]
    pub transitivity: bool,
}

pub fn subgroup_json(g: &FiniteGroup, s: &Subgroup) -> Value {
    json!({ "order": s.len(), "elements": s.elements().map(|x| g.name(x)).collect::<Vec<_>>() })
}

pub fn graph_json(g: &SubgroupGraph) -> Value {
    json!({
        "rank": g.rank(),
        "vertices": (0..g.vertex_count()).collect::<Vec<_>>(),
        "base": g.base(),
        "edges": g.edges().iter().map(|e| json!([e.source, format!("x{}", e.label), e.target])).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsat_core::dag::enumerate_colored_dags;
    use qsat_core::realize::realize;

    #[test]
    fn realizations_round_trip_through_json() {
        for d in (1..=3).flat_map(|n| enumerate_colored_dags(n).unwrap()) {
            let r = realize(&d).unwrap();
            let j = RealizationJson::from_realization(&r);
            let text = serde_json::to_string(&j).unwrap();
            let back: RealizationJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
            let r2 = back.to_realization().unwrap();
            assert_eq!(RealizationJson::from_realization(&r2), j);
        }
    }

    #[test]
    fn quotients_may_come_in_any_order() {
        let d = ColoredDag::from_labeled(&[("u", Some(0)), ("w", Some(1))], &[("u", "w")]).unwrap();
        let mut j = RealizationJson::from_realization(&realize(&d).unwrap());
        j.vertices.reverse();
        assert!(j.to_realization().is_ok());
        j.vertices.pop();
        assert!(matches!(j.to_realization(), Err(InputError::Format(_))));
    }

    #[test]
    fn group_inputs() {
        let g: GroupJson = serde_json::from_str(r#"{"degree":3,"generators":["(1 2)",["(1 2)","(2 3)"]]}"#).unwrap();
        assert_eq!(g.to_group().unwrap().order(), 6);
        let g: GroupJson = serde_json::from_str(r#"{"bundled":"q8"}"#).unwrap();
        assert_eq!(g.to_group().unwrap().order(), 8);
        let g: GroupJson = serde_json::from_str(r#"{"order":3,"table":[[0,1],[1,0]]}"#).unwrap();
        assert!(matches!(g.to_group(), Err(InputError::Format(_))));
    }
}
