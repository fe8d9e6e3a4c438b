use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bimodule::{ActionEntry, Bimodule, BimoduleFile, DiffEntry, ValueEntry};
use super::category::{axpy, resolve, CategoryFile, FiniteGradedCategory, Generator};
use crate::error::{Error, Result};
use crate::graded::GradedDims;
use crate::intmat::{self, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingModelFile {
    pub first: CategoryFile,
    pub second: CategoryFile,
    pub bimodule: BimoduleFile,
}

/// Two formal graded categories and a dg-bimodule between them: a finite model
/// of a glued category.
#[derive(Clone, Debug)]
pub struct GluingModel {
    pub first: FiniteGradedCategory,
    pub second: FiniteGradedCategory,
    pub bimodule: Bimodule,
}

impl GluingModel {
    pub fn new(file: GluingModelFile) -> Result<Self> {
        let first = file.first.build()?;
        let second = file.second.build()?;
        let bimodule = Bimodule::new(file.bimodule, &first, &second)?;
        Ok(GluingModel { first, second, bimodule })
    }

    pub fn to_file(&self) -> GluingModelFile {
        GluingModelFile {
            first: self.first.to_file().clone(),
            second: self.second.to_file().clone(),
            bimodule: self.bimodule.to_file().clone(),
        }
    }

    /// Cohomology of `G(f1, f2)` by object names.
    pub fn bimodule_dims(&self, f1: &str, f2: &str) -> Result<GradedDims> {
        let (a, b) = (self.first.object(f1)?, self.second.object(f2)?);
        self.bimodule
            .cohomology(a, b)
            .ok_or_else(|| Error::IncompleteModel(format!("G({f1}, {f2}) is not given")))
    }
}

/// An object `(F1, F2, φ)` of the glued category, with `φ` a degree-0 cocycle
/// in `G(F1, F2)`. A missing component stands for the zero object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueTriple {
    pub f1: Option<String>,
    pub f2: Option<String>,
    #[serde(default)]
    pub phi: BTreeMap<String, i64>,
}

impl GlueTriple {
    pub fn new(f1: Option<&str>, f2: Option<&str>, phi: &[(&str, i64)]) -> Self {
        GlueTriple {
            f1: f1.map(String::from),
            f2: f2.map(String::from),
            phi: phi.iter().map(|&(n, c)| (n.to_string(), c)).collect(),
        }
    }

    pub fn first(f1: &str) -> Self {
        Self::new(Some(f1), None, &[])
    }

    pub fn second(f2: &str) -> Self {
        Self::new(None, Some(f2), &[])
    }
}

struct Resolved {
    f1: Option<usize>,
    f2: Option<usize>,
    phi: Vec<i64>,
}

fn resolve_triple(model: &GluingModel, t: &GlueTriple) -> Result<Resolved> {
    let f1 = t.f1.as_deref().map(|n| model.first.object(n)).transpose()?;
    let f2 = t.f2.as_deref().map(|n| model.second.object(n)).transpose()?;
    let (Some(a), Some(b)) = (f1, f2) else {
        if t.phi.values().any(|&c| c != 0) {
            return Err(Error::Usage("a gluing morphism needs both components".into()));
        }
        return Ok(Resolved { f1, f2, phi: Vec::new() });
    };
    let basis = model.bimodule.value(a, b).ok_or_else(|| {
        Error::IncompleteModel(format!("G({}, {}) is not given", t.f1.as_deref().unwrap_or(""), t.f2.as_deref().unwrap_or("")))
    })?;
    let phi = resolve(basis, &t.phi, "gluing morphism").map_err(|e| Error::Usage(e.to_string()))?;
    if basis.iter().zip(&phi).any(|(g, &c)| c != 0 && g.degree != 0) {
        return Err(Error::Usage("the gluing morphism must have degree 0".into()));
    }
    let mut dphi = vec![0; basis.len()];
    for (e, &c) in phi.iter().enumerate() {
        axpy(&mut dphi, c, &model.bimodule.differential(a, b, e));
    }
    if dphi.iter().any(|&c| c != 0) {
        return Err(Error::Usage("the gluing morphism must be a cocycle".into()));
    }
    Ok(Resolved { f1, f2, phi })
}

/// Graded dimensions of `Hom(T, T′)` in the glued category: the cohomology of
/// `Hom(F1,F1′) ⊕ Hom(F2,F2′) ⊕ G(F1,F2′)[−1]` with differential
/// `(f1, f2, x) ↦ φ′·f1 − f2·φ − dx`.
pub fn gluing_hom(model: &GluingModel, t: &GlueTriple, t_prime: &GlueTriple) -> Result<GradedDims> {
    let s = resolve_triple(model, t)?;
    let u = resolve_triple(model, t_prime)?;
    let empty: &[Generator] = &[];
    let h1 = match (s.f1, u.f1) {
        (Some(a), Some(a2)) => model.first.hom(a, a2),
        _ => empty,
    };
    let h2 = match (s.f2, u.f2) {
        (Some(b), Some(b2)) => model.second.hom(b, b2),
        _ => empty,
    };
    let g = match (s.f1, u.f2) {
        (Some(a), Some(b2)) => model.bimodule.value(a, b2).ok_or_else(|| {
            Error::IncompleteModel(format!(
                "G({}, {}) is not given",
                model.first.objects()[a],
                model.second.objects()[b2]
            ))
        })?,
        _ => empty,
    };

    // images in G(F1, F2′) of each basis vector of the three summands
    let gdim = g.len();
    let mut columns: Vec<(i32, Vec<i64>)> = Vec::new();
    for (f, gen) in h1.iter().enumerate() {
        let mut img = vec![0; gdim];
        if let (Some(a), Some(a2), Some(b2)) = (s.f1, u.f1, u.f2) {
            for (e, &c) in u.phi.iter().enumerate() {
                axpy(&mut img, c, &model.bimodule.right_act(b2, a, a2, f, e));
            }
        }
        columns.push((gen.degree, img));
    }
    for (f, gen) in h2.iter().enumerate() {
        let mut img = vec![0; gdim];
        if let (Some(a), Some(b), Some(b2)) = (s.f1, s.f2, u.f2) {
            for (e, &c) in s.phi.iter().enumerate() {
                axpy(&mut img, -c, &model.bimodule.left_act(a, b, b2, f, e));
            }
        }
        columns.push((gen.degree, img));
    }
    if let (Some(a), Some(b2)) = (s.f1, u.f2) {
        for (e, gen) in g.iter().enumerate() {
            let img = model.bimodule.differential(a, b2, e).into_iter().map(|c| -c).collect();
            columns.push((gen.degree + 1, img));
        }
    }

    let Some((lo, hi)) = columns.iter().map(|(d, _)| (*d, 1)).collect::<GradedDims>().support() else {
        return Ok(GradedDims::new());
    };
    // D^p lands in G^p; its rank is that of the columns in degree p restricted to those rows
    let rank = |p: i32| -> usize {
        let rows: Vec<usize> = (0..gdim).filter(|&r| g[r].degree == p).collect();
        let cols: Vec<&Vec<i64>> = columns.iter().filter(|(d, _)| *d == p).map(|(_, v)| v).collect();
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        intmat::rank(&IntMatrix::from_fn(rows.len(), cols.len(), |r, c| cols[c][rows[r]]))
    };
    Ok((lo..=hi)
        .map(|p| {
            let dim = columns.iter().filter(|(d, _)| *d == p).count();
            (p, (dim - rank(p) - rank(p - 1)) as u64)
        })
        .collect())
}

/// The bimodule `G(F1, F2) = Cone(H1(F1,L1) ⊗ H2(L2,F2) → H1(F1,K1) ⊗ H2(K2,F2))`
/// whose map is `u ⊗ v ↦ (λ∘u) ⊗ (v∘μ)`, for `λ: L1 → K1` in the first
/// category and `μ: K2 → L2` in the second. Generators are named `A(u|v)` and
/// `B(u|v)`.
pub fn cone_bimodule(
    first: &FiniteGradedCategory,
    second: &FiniteGradedCategory,
    (l1, k1, lambda): (&str, &str, &str),
    (k2, l2, mu): (&str, &str, &str),
) -> Result<BimoduleFile> {
    let (l1, k1) = (first.object(l1)?, first.object(k1)?);
    let (k2, l2) = (second.object(k2)?, second.object(l2)?);
    let lambda = first.generator(l1, k1, lambda)?;
    let mu = second.generator(k2, l2, mu)?;
    let shift = first.hom(l1, k1)[lambda].degree + second.hom(k2, l2)[mu].degree - 1;
    let n1 = first.objects().len();
    let n2 = second.objects().len();

    struct Summand {
        a: Vec<(usize, usize)>,
        b: Vec<(usize, usize)>,
    }
    let summand = |f1: usize, f2: usize| Summand {
        a: pairs(first.hom(f1, l1).len(), second.hom(l2, f2).len()),
        b: pairs(first.hom(f1, k1).len(), second.hom(k2, f2).len()),
    };
    let a_name = |f1: usize, f2: usize, (u, v): (usize, usize)| {
        format!("A({}|{})", first.hom(f1, l1)[u].name, second.hom(l2, f2)[v].name)
    };
    let b_name = |f1: usize, f2: usize, (u, v): (usize, usize)| {
        format!("B({}|{})", first.hom(f1, k1)[u].name, second.hom(k2, f2)[v].name)
    };
    let tensor = |left: &[i64], right: &[i64], name: &dyn Fn((usize, usize)) -> String| -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        for (u, &x) in left.iter().enumerate() {
            for (v, &y) in right.iter().enumerate() {
                if x * y != 0 {
                    *out.entry(name((u, v))).or_insert(0) += x * y;
                }
            }
        }
        out
    };

    let mut file = BimoduleFile::default();
    for f1 in 0..n1 {
        for f2 in 0..n2 {
            let sm = summand(f1, f2);
            let mut basis = Vec::new();
            let mut differential = Vec::new();
            for &(u, v) in &sm.a {
                let degree = first.hom(f1, l1)[u].degree + second.hom(l2, f2)[v].degree + shift;
                basis.push(Generator::new(a_name(f1, f2, (u, v)), degree));
                let lu = first.compose(f1, l1, k1, u, lambda);
                let vm = second.compose(k2, l2, f2, mu, v);
                let coeffs = tensor(&lu, &vm, &|p| b_name(f1, f2, p));
                if !coeffs.is_empty() {
                    differential.push(DiffEntry { element: a_name(f1, f2, (u, v)), coeffs });
                }
            }
            for &(u, v) in &sm.b {
                let degree = first.hom(f1, k1)[u].degree + second.hom(k2, f2)[v].degree;
                basis.push(Generator::new(b_name(f1, f2, (u, v)), degree));
            }
            file.values.push(ValueEntry {
                src: first.objects()[f1].clone(),
                dst: second.objects()[f2].clone(),
                basis,
                differential,
            });
        }
    }

    let sparse = |v: &[i64], name: &dyn Fn(usize) -> String| -> BTreeMap<String, i64> {
        v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (name(i), c)).collect()
    };
    for f1 in 0..n1 {
        for f2 in 0..n2 {
            let sm = summand(f1, f2);
            // left actions u ⊗ v ↦ u ⊗ (f∘v) by f ∈ Hom(f2, t)
            for t in 0..n2 {
                for f in 0..second.hom(f2, t).len() {
                    if f2 == t && f == 0 {
                        continue;
                    }
                    let morphism = &second.hom(f2, t)[f].name;
                    for &(u, v) in &sm.a {
                        let coeffs = sparse(&second.compose(l2, f2, t, v, f), &|w| a_name(f1, t, (u, w)));
                        let entry = action(&second.objects()[f2], &second.objects()[t], &first.objects()[f1], morphism, a_name(f1, f2, (u, v)), coeffs);
                        file.left_actions.extend(entry);
                    }
                    for &(u, v) in &sm.b {
                        let coeffs = sparse(&second.compose(k2, f2, t, v, f), &|w| b_name(f1, t, (u, w)));
                        let entry = action(&second.objects()[f2], &second.objects()[t], &first.objects()[f1], morphism, b_name(f1, f2, (u, v)), coeffs);
                        file.left_actions.extend(entry);
                    }
                }
            }
            // right actions u ⊗ v ↦ (u∘f) ⊗ v by f ∈ Hom(s, f1)
            for s in 0..n1 {
                for f in 0..first.hom(s, f1).len() {
                    if s == f1 && f == 0 {
                        continue;
                    }
                    let morphism = &first.hom(s, f1)[f].name;
                    for &(u, v) in &sm.a {
                        let coeffs = sparse(&first.compose(s, f1, l1, f, u), &|w| a_name(s, f2, (w, v)));
                        let entry = action(&first.objects()[s], &first.objects()[f1], &second.objects()[f2], morphism, a_name(f1, f2, (u, v)), coeffs);
                        file.right_actions.extend(entry);
                    }
                    for &(u, v) in &sm.b {
                        let coeffs = sparse(&first.compose(s, f1, k1, f, u), &|w| b_name(s, f2, (w, v)));
                        let entry = action(&first.objects()[s], &first.objects()[f1], &second.objects()[f2], morphism, b_name(f1, f2, (u, v)), coeffs);
                        file.right_actions.extend(entry);
                    }
                }
            }
        }
    }
    Ok(file)
}

fn pairs(m: usize, n: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|u| (0..n).map(move |v| (u, v))).collect()
}

fn action(src: &str, dst: &str, fixed: &str, morphism: &str, element: String, coeffs: BTreeMap<String, i64>) -> Option<ActionEntry> {
    (!coeffs.is_empty()).then(|| ActionEntry {
        fixed: fixed.into(),
        src: src.into(),
        dst: dst.into(),
        morphism: morphism.into(),
        element,
        coeffs,
    })
}

/// What the degree-1 composition `μ∘λ: O_C → O_x → O_C` is taken to be. The
/// local model does not pin it down.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuLambda {
    /// The first degree-1 generator `h1` of `End(O_C)`, when the genus is positive.
    #[default]
    FirstGenerator,
    Zero,
}

/// Structure sheaf and skyscraper of a curve of genus `g`, with objects
/// `O_C{i}` and `O_x{i}`.
pub fn curve_category(g: u64, i: usize, mu_lambda: MuLambda) -> CategoryFile {
    let (c, x) = (format!("O_C{i}"), format!("O_x{i}"));
    let h: Vec<String> = (1..=g).map(|k| format!("h{k}")).collect();
    let h_basis: Vec<(&str, i32)> = h.iter().map(|n| (n.as_str(), 1)).collect();
    let mut file = CategoryFile::new()
        .object(&c)
        .object(&x)
        .hom(&c, &c, &h_basis)
        .hom(&c, &x, &[("lambda", 0)])
        .hom(&x, &c, &[("mu", 1)])
        .hom(&x, &x, &[("lambda_mu", 1)])
        .compose(&x, &c, &x, "mu", "lambda", &[("lambda_mu", 1)]);
    if mu_lambda == MuLambda::FirstGenerator && g > 0 {
        file = file.compose(&c, &x, &c, "lambda", "mu", &[("h1", 1)]);
    }
    file
}

/// Two curves glued along the ideal sheaf of a point: `G` is the cone of
/// `λ1 ⊗ μ2`, with `λ1: O_C1 → O_x1` and `μ2: O_x2 → O_C2`.
pub fn ipg_local_model(g1: u64, g2: u64, mu_lambda: MuLambda) -> GluingModel {
    let first = curve_category(g1, 1, mu_lambda).build().expect("curve model is valid");
    let second = curve_category(g2, 2, mu_lambda).build().expect("curve model is valid");
    let bimodule = cone_bimodule(&first, &second, ("O_C1", "O_x1", "lambda"), ("O_x2", "O_C2", "mu"))
        .and_then(|file| Bimodule::new(file, &first, &second))
        .expect("cone bimodule is valid");
    GluingModel { first, second, bimodule }
}

/// `Cone(O_x1 → O_x2)[−1]` glued along the generator of `G(O_x1, O_x2)` in degree 0.
pub fn exotic_triple() -> GlueTriple {
    GlueTriple::new(Some("O_x1"), Some("O_x2"), &[("B(id|id)", 1)])
}

/// The generic model: `K` spherical with `End(K) = k ⊕ k[−d]`, one morphism
/// `λ: L → K` and one `μ: K → L[d]` with `λ∘μ` the generator of `End^d(K)`.
fn spherical_category(d: i32, i: usize, adherence: usize) -> CategoryFile {
    let (l, k) = (format!("L{i}"), format!("K{i}"));
    let maps: Vec<String> = (0..adherence).map(|j| if j == 0 { "lambda".into() } else { format!("lambda{j}") }).collect();
    let lk: Vec<(&str, i32)> = maps.iter().map(|n| (n.as_str(), 0)).collect();
    CategoryFile::new()
        .object(&l)
        .object(&k)
        .hom(&k, &k, &[("sigma", d)])
        .hom(&l, &k, &lk)
        .hom(&k, &l, &[("mu", d)])
        .compose(&k, &l, &k, "mu", "lambda", &[("sigma", 1)])
}

/// Ext table of `Cone(K1 → K2)[−1]` glued along the cone of `λ1 ⊗ μ2`, where
/// `Kᵢ` is `dᵢ`-spherical and `Hom(Lᵢ, Kᵢ)` has dimension `adherenceᵢ`.
pub fn exotic_ext_table(d1: i32, d2: i32, adherence1: usize, adherence2: usize) -> Result<GradedDims> {
    for a in [adherence1, adherence2] {
        if a != 1 {
            return Err(Error::NotAdherent { dim: a });
        }
    }
    if d1 < 1 || d2 < 1 {
        return Err(Error::Usage("spherical degrees must be positive".into()));
    }
    let first = spherical_category(d1, 1, adherence1).build()?;
    let second = spherical_category(d2, 2, adherence2).build()?;
    let file = cone_bimodule(&first, &second, ("L1", "K1", "lambda"), ("K2", "L2", "mu"))?;
    let bimodule = Bimodule::new(file, &first, &second)?;
    let model = GluingModel { first, second, bimodule };
    let e = GlueTriple::new(Some("K1"), Some("K2"), &[("B(id|id)", 1)]);
    gluing_hom(&model, &e, &e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bimodule_values_at_points_and_curves() {
        for (g1, g2) in [(0, 0), (1, 2), (3, 2)] {
            let m = ipg_local_model(g1, g2, MuLambda::FirstGenerator);
            assert_eq!(m.bimodule_dims("O_x1", "O_x2").unwrap(), GradedDims::from([(0, 1), (1, 2)]));
            let cc = m.bimodule_dims("O_C1", "O_C2").unwrap();
            assert_eq!(cc.euler_char(), (g1 * g2) as i64 - g1 as i64 - g2 as i64);
        }
    }

    #[test]
    fn claim_actions_hit_independent_generators() {
        let m = ipg_local_model(2, 2, MuLambda::FirstGenerator);
        let x1 = m.first.object("O_x1").unwrap();
        let x2 = m.second.object("O_x2").unwrap();
        let basis = m.bimodule.value(x1, x2).unwrap();
        let eps = basis.iter().position(|g| g.name == "B(id|id)").unwrap();
        let lm1 = m.first.generator(x1, x1, "lambda_mu").unwrap();
        let lm2 = m.second.generator(x2, x2, "lambda_mu").unwrap();
        let right = m.bimodule.right_act(x2, x1, x1, lm1, eps);
        let left = m.bimodule.left_act(x1, x2, x2, lm2, eps);
        let mat = IntMatrix::from_fn(basis.len(), 2, |r, c| if c == 0 { right[r] } else { left[r] });
        assert_eq!(intmat::rank(&mat), 2);
    }

    #[test]
    fn exotic_object_is_exceptional() {
        for mode in [MuLambda::FirstGenerator, MuLambda::Zero] {
            for (g1, g2) in [(0, 0), (0, 3), (2, 1), (4, 4)] {
                let m = ipg_local_model(g1, g2, mode);
                let e = exotic_triple();
                assert_eq!(gluing_hom(&m, &e, &e).unwrap(), GradedDims::from([(0, 1)]), "{g1} {g2} {mode:?}");
            }
        }
    }

    #[test]
    fn first_component_is_fully_faithful() {
        let m = ipg_local_model(3, 1, MuLambda::FirstGenerator);
        let (c, x) = (GlueTriple::first("O_C1"), GlueTriple::first("O_x1"));
        assert_eq!(gluing_hom(&m, &c, &c).unwrap(), GradedDims::from([(0, 1), (1, 3)]));
        assert_eq!(gluing_hom(&m, &x, &c).unwrap(), GradedDims::from([(1, 1)]));
        let (c2, x2) = (GlueTriple::second("O_C2"), GlueTriple::second("O_x2"));
        assert_eq!(gluing_hom(&m, &c2, &x2).unwrap(), GradedDims::from([(0, 1)]));
        // nothing maps from the second factor to the first
        assert!(gluing_hom(&m, &c2, &c).unwrap().is_zero());
    }

    #[test]
    fn zero_bimodule_gives_direct_sum() {
        let first = curve_category(2, 1, MuLambda::Zero).build().unwrap();
        let second = curve_category(1, 2, MuLambda::Zero).build().unwrap();
        let values = ["O_C1", "O_x1"]
            .iter()
            .flat_map(|a| ["O_C2", "O_x2"].map(|b| ValueEntry { src: a.to_string(), dst: b.into(), basis: vec![], differential: vec![] }))
            .collect();
        let bimodule = Bimodule::new(BimoduleFile { values, ..Default::default() }, &first, &second).unwrap();
        let m = GluingModel { first, second, bimodule };
        let t = GlueTriple::new(Some("O_C1"), Some("O_C2"), &[]);
        assert_eq!(gluing_hom(&m, &t, &t).unwrap(), GradedDims::from([(0, 2), (1, 3)]));
    }

    #[test]
    fn missing_value_is_incomplete() {
        let first = curve_category(1, 1, MuLambda::Zero).build().unwrap();
        let second = curve_category(1, 2, MuLambda::Zero).build().unwrap();
        let bimodule = Bimodule::new(BimoduleFile::default(), &first, &second).unwrap();
        let m = GluingModel { first, second, bimodule };
        let t = GlueTriple::new(Some("O_C1"), Some("O_C2"), &[]);
        assert!(matches!(gluing_hom(&m, &t, &t), Err(Error::IncompleteModel(_))));
    }

    #[test]
    fn phi_must_sit_in_degree_zero() {
        let m = ipg_local_model(1, 1, MuLambda::Zero);
        let t = GlueTriple::new(Some("O_x1"), Some("O_x2"), &[("B(lambda_mu|id)", 1)]);
        assert!(matches!(gluing_hom(&m, &t, &t), Err(Error::Usage(_))));
    }

    #[test]
    fn exotic_table_generic_degrees() {
        for (d1, d2) in [(1, 1), (3, 3), (2, 5), (1, 4)] {
            assert_eq!(exotic_ext_table(d1, d2, 1, 1).unwrap(), GradedDims::from([(0, 1)]));
        }
        assert!(matches!(exotic_ext_table(1, 1, 2, 1), Err(Error::NotAdherent { dim: 2 })));
        assert!(matches!(exotic_ext_table(1, 1, 1, 0), Err(Error::NotAdherent { dim: 0 })));
    }

    #[test]
    fn model_file_round_trip() {
        let m = ipg_local_model(1, 2, MuLambda::FirstGenerator);
        let json = serde_json::to_string(&m.to_file()).unwrap();
        let back = GluingModel::new(serde_json::from_str(&json).unwrap()).unwrap();
        let e = exotic_triple();
        assert_eq!(gluing_hom(&back, &e, &e).unwrap(), GradedDims::from([(0, 1)]));
    }
}
