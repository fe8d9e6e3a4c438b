//! Hochschild homology and cohomology dimensions of the glued families, and the
//! long exact sequences that assemble them from their pieces.
//!
//! Tables are keyed by shift: `k ⊕ k^5[−2]` is `{0: 1, −2: 5}`. Homology uses
//! the same convention, so `k^g[1]` sits at key `1`. Connecting-map ranks are
//! keyed by cohomological degree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graded::GradedDims;

pub fn hh_homology(spec: &FamilySpec) -> GradedDims {
    let (g, middle) = match *spec {
        FamilySpec::Augmented { g } => (g, 3),
        FamilySpec::Ipg { g1, g2 } => (g1 + g2, 4),
        FamilySpec::Rpg { g1, g2 } => (g1 + g2, 3),
        FamilySpec::BnComplement { g, .. } => (g, 2),
    };
    GradedDims::from([(1, g), (0, middle), (-1, g)])
}

/// Closed forms. The two-curve families need both genera at least 2, and the
/// complement of a line bundle is handled by [`hh_bn_modification`].
pub fn hh_cohomology(spec: &FamilySpec) -> Result<GradedDims> {
    match *spec {
        FamilySpec::Augmented { g: 0 } => Ok(GradedDims::from([(0, 1), (-1, 3)])),
        FamilySpec::Augmented { g: 1 } => Ok(GradedDims::from([(0, 1), (-1, 1), (-2, 1)])),
        FamilySpec::Augmented { g } => Ok(GradedDims::from([(0, 1), (-2, 3 * g - 3)])),
        FamilySpec::Ipg { g1, g2 } if g1.min(g2) >= 2 => {
            Ok(GradedDims::from([(0, 1), (-2, 3 * (g1 + g2) - 4), (-3, g1 * g2)]))
        }
        FamilySpec::Rpg { g1, g2 } if g1.min(g2) >= 2 => {
            Ok(GradedDims::from([(0, 1), (-2, 3 * (g1 + g2) - 3), (-3, g1 * g2), (-4, g1 * g2)]))
        }
        FamilySpec::Ipg { .. } | FamilySpec::Rpg { .. } => {
            Err(Error::NoClosedForm(format!("{spec}: both genera must be at least 2")))
        }
        FamilySpec::BnComplement { .. } => Err(Error::NoClosedForm(format!(
            "{spec}: depends on the rank of a multiplication map, see hh_bn_modification"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HochschildTable {
    pub hh_homology: GradedDims,
    /// `None` where no closed form is available.
    pub hh_cohomology: Option<GradedDims>,
}

pub fn hochschild_table(spec: &FamilySpec) -> HochschildTable {
    HochschildTable { hh_homology: hh_homology(spec), hh_cohomology: hh_cohomology(spec).ok() }
}

/// `HH^p` of a glued category from `HH(D1) ⊕ HH(D2) → Ext(G, G)`, whose map in
/// degree `p` has rank `ranks[p]` (missing degrees have rank 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingChase {
    pub hh_first: GradedDims,
    pub hh_second: GradedDims,
    pub ext_gg: GradedDims,
    pub ranks: BTreeMap<i32, u64>,
}

/// `HH^p` of a complement from `Ext(S(E), E) → HH(D)`, whose map in degree `p`
/// has rank `ranks[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementChase {
    pub ext_se_e: GradedDims,
    pub hh_ambient: GradedDims,
    pub ranks: BTreeMap<i32, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaseOutcome {
    pub table: GradedDims,
    /// Whether the table agrees with the expected one, when one was given.
    pub matches: Option<bool>,
    /// `HH⁰` is more than `k`, as happens for a trivial gluing.
    pub disconnected: bool,
}

/// Rank of the degree-`p` map between tables keyed by shift, checked against
/// both ends.
fn checked_rank(ranks: &BTreeMap<i32, u64>, p: i32, source: &GradedDims, target: &GradedDims) -> Result<u64> {
    let r = ranks.get(&p).copied().unwrap_or(0);
    let (s, t) = (source.get(-p), target.get(-p));
    if r > s.min(t) {
        return Err(Error::ChaseFailed {
            degree: p,
            reason: format!("rank {r} exceeds min(source {s}, target {t})"),
        });
    }
    Ok(r)
}

fn degree_range(tables: &[&GradedDims], ranks: &BTreeMap<i32, u64>) -> (i32, i32) {
    let mut lo = 0;
    let mut hi = 0;
    for t in tables {
        if let Some((a, b)) = t.support() {
            lo = lo.min(-b);
            hi = hi.max(-a);
        }
    }
    for &p in ranks.keys() {
        lo = lo.min(p);
        hi = hi.max(p);
    }
    (lo - 1, hi + 1)
}

fn outcome(table: GradedDims, expected: Option<&GradedDims>) -> ChaseOutcome {
    ChaseOutcome {
        matches: expected.map(|e| *e == table),
        disconnected: table.get(0) > 1,
        table,
    }
}

/// `dim HH^p = dim ker α_p + dim coker α_{p−1}`.
pub fn hh_gluing_check(chase: &GluingChase, expected: Option<&GradedDims>) -> Result<ChaseOutcome> {
    let source = chase.hh_first.direct_sum(&chase.hh_second);
    let target = &chase.ext_gg;
    let (lo, hi) = degree_range(&[&source, target], &chase.ranks);
    let mut table = GradedDims::new();
    for p in lo..=hi {
        let r = checked_rank(&chase.ranks, p, &source, target)?;
        let r_prev = checked_rank(&chase.ranks, p - 1, &source, target)?;
        table.set(-p, source.get(-p) - r + target.get(-(p - 1)) - r_prev);
    }
    Ok(outcome(table, expected))
}

/// `dim HH^p = dim coker β_p + dim ker β_{p+1}`.
pub fn hh_complement_check(chase: &ComplementChase, expected: Option<&GradedDims>) -> Result<ChaseOutcome> {
    let source = &chase.ext_se_e;
    let target = &chase.hh_ambient;
    let (lo, hi) = degree_range(&[source, target], &chase.ranks);
    let mut table = GradedDims::new();
    for p in lo..=hi {
        let r = checked_rank(&chase.ranks, p, source, target)?;
        let r_next = checked_rank(&chase.ranks, p + 1, source, target)?;
        table.set(-p, target.get(-p) - r + source.get(-(p + 1)) - r_next);
    }
    Ok(outcome(table, expected))
}

/// `HH` of a curve of genus at least 2.
fn curve_hh(g: u64) -> GradedDims {
    GradedDims::from([(0, 1), (-1, g), (-2, 3 * g - 3)])
}

/// Ideal point gluing: `Ext(I, I)` of the ideal sheaf of a point on the
/// product, with the restriction map injective in degree 1 and zero in degree 2.
pub fn ipg_gluing_chase(g1: u64, g2: u64) -> Result<GluingChase> {
    if g1.min(g2) < 2 {
        return Err(Error::NoClosedForm("both genera must be at least 2".into()));
    }
    Ok(GluingChase {
        hh_first: curve_hh(g1),
        hh_second: curve_hh(g2),
        ext_gg: GradedDims::from([(0, 1), (-1, g1 + g2 + 2), (-2, g1 * g2)]),
        ranks: BTreeMap::from([(0, 1), (1, g1 + g2), (2, 0)]),
    })
}

/// The complement of the exotic object in the ideal point gluing, with
/// `Ext(S(E), E) = k[−3] ⊕ k^{g1 g2}[−5]` mapping to zero.
pub fn rpg_complement_chase(g1: u64, g2: u64) -> Result<ComplementChase> {
    let hh_ambient = hh_cohomology(&FamilySpec::Ipg { g1, g2 })?;
    Ok(ComplementChase {
        ext_se_e: GradedDims::from([(-3, 1), (-5, g1 * g2)]),
        hh_ambient,
        ranks: BTreeMap::new(),
    })
}

/// The two outer terms of the complex computing `Ext^{2,3,4}(S(E_L), E_L)`
/// for a line bundle `L` with `h⁰(L) = h0`, `h¹(L) = h1`, `h0·h1 = g`, given
/// by Riemann–Roch, together with the first term `h¹(ω⁻¹) = 3g − 3`.
pub fn bn_modification_terms(h0: u64, h1: u64) -> Result<[u64; 3]> {
    if h0 < 2 || h1 < 2 {
        return Err(Error::Usage("needs h0 >= 2 and h1 >= 2".into()));
    }
    let g = h0 * h1;
    let d = h0 + g - 1 - h1;
    let first = 3 * g - 3;
    let middle = h0 * (3 * g - 3 - d) + (d + g - 1) * h1;
    let last = h0 * g * h1;
    Ok([first, middle, last])
}

/// `HH` of the complement of `E_L`: `k`, then the kernel and cokernel of the
/// map from `source` to `target` of the given rank.
pub fn hh_bn_modification(source: u64, target: u64, rank: u64) -> Result<GradedDims> {
    if rank > source.min(target) {
        return Err(Error::Usage(format!("rank {rank} exceeds min({source}, {target})")));
    }
    Ok(GradedDims::from([(0, 1), (-2, source - rank), (-3, target - rank)]))
}
