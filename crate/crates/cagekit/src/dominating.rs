//! Perfect dominating sets of Gamma_q for even prime powers q >= 4, and the
//! q-regular girth-8 graphs obtained by deleting them.
//!
//! The set is D = N[Q] u I_Q u N[S] u I_S, where Q and S are explicit seed
//! sets, N[.] is the closed neighbourhood and I_A is the intersection of
//! the distance-exactly-2 neighbourhoods over a seed set A. For q = 4 the
//! seed Q is replaced by a shifted variant Q' because p(u) = 1 + u + u^2
//! only takes the values 0 and 1 on F_4. The construction is always
//! re-verified by the generic perfection checker instead of being trusted.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cage::build_gamma;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::graph::{BipartiteGraph, VertexSet};
use crate::label::{Label, Side};

/// Which seed-set variant built the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdsVariant {
    EvenGe8,
    Q4Special,
}

/// The seed sets Q (side 0) and S (side 1).
#[derive(Debug, Clone)]
pub struct SeedSets {
    pub variant: PdsVariant,
    /// For the q = 4 variant: the chosen x in F_4 \ {0,1}.
    pub x: Option<FieldElem>,
    pub q_labels: Vec<Label>,
    pub s_labels: Vec<Label>,
}

/// p(u) = 1 + u + u^2.
pub fn p_poly(field: &Field, u: FieldElem) -> FieldElem {
    field.add(field.add(field.one(), u), field.mul(u, u))
}

fn s_labels(field: &Field) -> Vec<Label> {
    let mut s: Vec<Label> = field
        .elements()
        .map(|u| Label::point(Side::One, u, u, p_poly(field, u)))
        .collect();
    s.push(Label::rho_bc(Side::One, field.one(), field.one()));
    s
}

/// Seed sets for even prime powers q >= 4. Dispatches to the Q' variant at
/// q = 4, taking the smaller admissible x.
pub fn seed_sets(field: &Field) -> Result<SeedSets> {
    let q = field.q() as u64;
    if q < 4 || !q.is_multiple_of(2) {
        return Err(Error::UnsupportedQ(q));
    }
    if q == 4 {
        return seed_sets_q4(field, field.elem(2));
    }
    let zero = field.zero();
    let mut q_labels: Vec<Label> = field
        .elements()
        .map(|j| Label::rho_bc(Side::Zero, j, zero))
        .collect();
    q_labels.push(Label::rho_rho_c(Side::Zero, zero));
    Ok(SeedSets {
        variant: PdsVariant::EvenGe8,
        x: None,
        q_labels,
        s_labels: s_labels(field),
    })
}

/// The q = 4 variant Q' = {(rho,j,x)} u {(rho,rho,0)} with x not in {0,1};
/// S is unchanged.
pub fn seed_sets_q4(field: &Field, x: FieldElem) -> Result<SeedSets> {
    if field.q() != 4 {
        return Err(Error::UnsupportedQ(field.q() as u64));
    }
    if x.value() < 2 {
        return Err(Error::Construction(format!(
            "x = {x} must avoid 0 and 1 in F_4"
        )));
    }
    let mut q_labels: Vec<Label> = field
        .elements()
        .map(|j| Label::rho_bc(Side::Zero, j, x))
        .collect();
    q_labels.push(Label::rho_rho_c(Side::Zero, field.zero()));
    Ok(SeedSets {
        variant: PdsVariant::Q4Special,
        x: Some(x),
        q_labels,
        s_labels: s_labels(field),
    })
}

/// N[A] = A together with every neighbour of a member.
pub fn closed_neighborhood(g: &BipartiteGraph, a: &VertexSet) -> VertexSet {
    let mut items: Vec<u32> = a.iter().collect();
    for v in a.iter() {
        items.extend_from_slice(g.neighbors(v));
    }
    VertexSet::from_vec(items)
}

/// Vertices at distance exactly 2 from `v`.
fn second_neighborhood(g: &BipartiteGraph, v: u32) -> VertexSet {
    let mut items = Vec::new();
    for &w in g.neighbors(v) {
        items.extend_from_slice(g.neighbors(w));
    }
    let near = VertexSet::from_vec(items);
    // Drop v itself and its direct neighbours.
    let mut direct: Vec<u32> = g.neighbors(v).to_vec();
    direct.push(v);
    near.difference(&VertexSet::from_vec(direct))
}

/// The intersection over all a in A of the distance-exactly-2
/// neighbourhoods N^2(a).
pub fn common_second_neighborhood(g: &BipartiteGraph, a: &VertexSet) -> Result<VertexSet> {
    let mut members = a.iter();
    let first = members.next().ok_or(Error::EmptySeed)?;
    let mut acc = second_neighborhood(g, first);
    for v in members {
        acc = acc.intersection(&second_neighborhood(g, v));
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// A witness that perfection fails somewhere.
#[derive(Debug, Clone, Serialize)]
pub struct PdsWitness {
    pub vertex: String,
    pub count: usize,
}

/// Outcome of a perfect-domination check, with enough context to reproduce
/// the construction from the report alone.
#[derive(Debug, Clone, Serialize)]
pub struct PdsCertificate {
    pub q: u32,
    pub variant: Option<PdsVariant>,
    /// The q = 4 x-choice, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u32>,
    pub cardinality: u64,
    pub perfect: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PdsWitness>,
    /// Histogram of |N(v) ∩ U| over vertices v outside U.
    pub outside_neighbor_counts: BTreeMap<usize, u64>,
    pub induced_degrees: BTreeMap<u32, u64>,
    pub induced_diameter: Option<u32>,
    /// Certificate for the other q = 4 x-choice, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternate: Option<Box<PdsCertificate>>,
    #[serde(skip)]
    pub pds: VertexSet,
}

/// Checks the perfection condition |N(v) ∩ U| = 1 for every v outside U and
/// reports the induced subgraph's shape. Failures are reported, not thrown.
pub fn verify_pds(g: &BipartiteGraph, u: &VertexSet) -> PdsCertificate {
    let order = g.order();
    let mask = u.to_mask(order);
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut witness = None;
    for v in 0..order as u32 {
        if mask[v as usize] {
            continue;
        }
        let inside = g.neighbors(v).iter().filter(|&&w| mask[w as usize]).count();
        *counts.entry(inside).or_insert(0) += 1;
        if inside != 1 && witness.is_none() {
            witness = Some(PdsWitness {
                vertex: g.describe_vertex(v),
                count: inside,
            });
        }
    }
    let induced = g.induced_subgraph(u);
    let q = g.labeling().map(|l| l.codec().q()).unwrap_or(0);
    PdsCertificate {
        q,
        variant: None,
        x: None,
        cardinality: u.len() as u64,
        perfect: witness.is_none(),
        witness,
        outside_neighbor_counts: counts,
        induced_degrees: induced.degree_profile(),
        induced_diameter: induced.diameter(),
        alternate: None,
        pds: u.clone(),
    }
}

fn vertices_of_labels(g: &BipartiteGraph, labels: &[Label]) -> Result<VertexSet> {
    labels
        .iter()
        .map(|l| {
            g.vertex_of(l)
                .ok_or_else(|| Error::Construction(format!("label {l} not present in graph")))
        })
        .collect::<Result<Vec<u32>>>()
        .map(VertexSet::from_vec)
}

/// The two halves D_Q = N[Q] u I_Q and D_S = N[S] u I_S.
pub(crate) fn dominating_halves(
    g: &BipartiteGraph,
    seeds: &SeedSets,
) -> Result<(VertexSet, VertexSet)> {
    let q_set = vertices_of_labels(g, &seeds.q_labels)?;
    let s_set = vertices_of_labels(g, &seeds.s_labels)?;
    let d_q = closed_neighborhood(g, &q_set).union(&common_second_neighborhood(g, &q_set)?);
    let d_s = closed_neighborhood(g, &s_set).union(&common_second_neighborhood(g, &s_set)?);
    Ok((d_q, d_s))
}

/// Builds the dominating set on a given Gamma_q and verifies it.
pub fn build_pds_on(g: &BipartiteGraph, seeds: &SeedSets) -> Result<PdsCertificate> {
    let (d_q, d_s) = dominating_halves(g, seeds)?;
    let q = g.labeling().map(|l| l.codec().q()).unwrap_or(0);
    if seeds.variant == PdsVariant::EvenGe8 {
        // The construction relies on the halves being vertex disjoint.
        let overlap = d_q.intersection(&d_s);
        if !overlap.is_empty() {
            let example = overlap
                .iter()
                .next()
                .map(|v| g.describe_vertex(v))
                .unwrap_or_default();
            return Err(Error::SeedOverlap {
                q,
                overlap: overlap.len(),
                example,
            });
        }
    }
    let d = d_q.union(&d_s);
    let mut cert = verify_pds(g, &d);
    cert.variant = Some(seeds.variant);
    cert.x = seeds.x.map(|e| e.value());
    if !cert.perfect {
        let w = cert.witness.as_ref().expect("imperfect without witness");
        return Err(Error::PerfectionFailure {
            vertex: w.vertex.clone(),
            count: w.count,
        });
    }
    Ok(cert)
}

/// Builds and verifies the perfect dominating set of Gamma_q for an even
/// prime power q >= 4. At q = 4 both admissible x-choices are built and the
/// certificate of the second is attached to the first.
pub fn build_pds(q: u64) -> Result<PdsCertificate> {
    if !q.is_multiple_of(2) || q < 4 {
        return Err(Error::UnsupportedQ(q));
    }
    let field = Field::new(q)?;
    let gamma = build_gamma(q)?;
    let seeds = seed_sets(&field)?;
    let mut cert = build_pds_on(&gamma, &seeds)?;
    if q == 4 {
        let other = seed_sets_q4(&field, field.elem(3))?;
        cert.alternate = Some(Box::new(build_pds_on(&gamma, &other)?));
    }
    Ok(cert)
}

/// Gamma_q minus its perfect dominating set: a q-regular girth-8 graph of
/// order 2(q^3 - 3q - 2).
pub fn remove_pds(q: u64) -> Result<BipartiteGraph> {
    let cert = build_pds(q)?;
    let gamma = build_gamma(q)?;
    let keep = cert.pds.complement(gamma.order());
    Ok(gamma.induced_subgraph(&keep))
}

/// The explicit matching sending each vertex of D_Q ∩ V_1 to a vertex of
/// D_S ∩ V_0, as pairs of labels. None when the solved pair degenerates
/// (p(a) = 0 admits no solution).
pub(crate) fn matching_pairs(field: &Field) -> Option<Vec<(Label, Label)>> {
    let one = field.one();
    let zero = field.zero();
    let mut pairs = Vec::new();
    // (rho,rho,u)_1 -> (rho,u,p(u))_0 and (rho,rho,rho)_1 -> (rho,rho,1)_0.
    for u in field.elements() {
        pairs.push((
            Label::rho_rho_c(Side::One, u),
            Label::rho_bc(Side::Zero, u, p_poly(field, u)),
        ));
    }
    pairs.push((
        Label::rho_rho_rho(Side::One),
        Label::rho_rho_c(Side::Zero, one),
    ));
    // (rho,t,0)_1 -> (0,t,p(t))_0.
    for t in field.elements() {
        pairs.push((
            Label::rho_bc(Side::One, t, zero),
            Label::point(Side::Zero, zero, t, p_poly(field, t)),
        ));
    }
    // (a,a,0)_1 -> (1,0,a^2)_0 and (a,a+1,0)_1 -> (1,1,a^2)_0.
    for a in field.elements() {
        let a2 = field.mul(a, a);
        pairs.push((
            Label::point(Side::One, a, a, zero),
            Label::point(Side::Zero, one, zero, a2),
        ));
        pairs.push((
            Label::point(Side::One, a, field.add(a, one), zero),
            Label::point(Side::Zero, one, one, a2),
        ));
    }
    // For t outside {0,1}: (a,a+t,0)_1 -> (x, ax+a+t, a^2 x)_0 where
    // u = a + (t+1)^{-1} p(a) and x = 1 + t(t+1) p(a)^{-1}.
    for a in field.elements() {
        let pa = p_poly(field, a);
        for t in field.elements() {
            if t == zero || t == one {
                continue;
            }
            let t1_inv = field.inv(field.add(t, one)).ok()?;
            let pa_inv = field.inv(pa).ok()?;
            let _u = field.add(a, field.mul(t1_inv, pa));
            let x = field.add(one, field.mul(field.mul(t, field.add(t, one)), pa_inv));
            let y = field.add(field.add(field.mul(a, x), a), t);
            let z = field.mul(field.mul(a, a), x);
            pairs.push((
                Label::point(Side::One, a, field.add(a, t), zero),
                Label::point(Side::Zero, x, y, z),
            ));
        }
    }
    Some(pairs)
}

/// Validates a proposed matching: sources cover D_Q ∩ V_1 exactly, every
/// pair is an edge of the graph, targets lie in D_S ∩ V_0 and are distinct.
pub(crate) fn matching_is_valid(
    g: &BipartiteGraph,
    pairs: &[(u32, u32)],
    dq_side1: &VertexSet,
    ds_side0: &VertexSet,
) -> bool {
    let sources: VertexSet = pairs.iter().map(|&(s, _)| s).collect();
    if sources.len() != pairs.len() || &sources != dq_side1 {
        return false;
    }
    let targets: VertexSet = pairs.iter().map(|&(_, t)| t).collect();
    if targets.len() != pairs.len() {
        return false; // not injective
    }
    pairs
        .iter()
        .all(|&(s, t)| g.has_edge(s, t) && ds_side0.contains(t))
}

/// Verifies the explicit matching for even prime powers q >= 8.
pub fn check_matching(q: u64) -> Result<bool> {
    if !q.is_multiple_of(2) || q < 8 {
        return Err(Error::UnsupportedQ(q));
    }
    let field = Field::new(q)?;
    let gamma = build_gamma(q)?;
    let seeds = seed_sets(&field)?;
    let (d_q, d_s) = dominating_halves(&gamma, &seeds)?;
    let sides = gamma.sides().expect("gamma declares sides");
    let dq_side1: VertexSet = d_q.iter().filter(|&v| sides[v as usize] == 1).collect();
    let ds_side0: VertexSet = d_s.iter().filter(|&v| sides[v as usize] == 0).collect();
    let pairs = match matching_pairs(&field) {
        Some(pairs) => pairs,
        None => return Ok(false),
    };
    let mut index_pairs = Vec::with_capacity(pairs.len());
    for (src, dst) in &pairs {
        let (Some(s), Some(t)) = (gamma.vertex_of(src), gamma.vertex_of(dst)) else {
            return Ok(false);
        };
        index_pairs.push((s, t));
    }
    Ok(matching_is_valid(
        &gamma,
        &index_pairs,
        &dq_side1,
        &ds_side0,
    ))
}
