use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::category::{axpy, check_degree, resolve, unique_names, unit, FiniteGradedCategory, Generator, IDENTITY};
use crate::error::{Error, Result};
use crate::graded::GradedDims;
use crate::intmat::{self, IntMatrix};

/// A value `G(src, dst)` for `src` in the first category and `dst` in the
/// second: a finite complex with a named basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub src: String,
    pub dst: String,
    pub basis: Vec<Generator>,
    #[serde(default)]
    pub differential: Vec<DiffEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub element: String,
    pub coeffs: BTreeMap<String, i64>,
}

/// Left actions: a morphism `src → dst` of the second category sends
/// `element ∈ G(fixed, src)` into `G(fixed, dst)`.
/// Right actions: a morphism `src → dst` of the first category sends
/// `element ∈ G(dst, fixed)` into `G(src, fixed)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub fixed: String,
    pub src: String,
    pub dst: String,
    pub morphism: String,
    pub element: String,
    pub coeffs: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub values: Vec<ValueEntry>,
    #[serde(default)]
    pub left_actions: Vec<ActionEntry>,
    #[serde(default)]
    pub right_actions: Vec<ActionEntry>,
}

type Key = (usize, usize, usize, usize, usize);

/// A dg-bimodule over two formal graded categories, with finite-dimensional
/// values. Actions of identities are implicit.
#[derive(Clone, Debug)]
pub struct Bimodule {
    source: BimoduleFile,
    values: HashMap<(usize, usize), Vec<Generator>>,
    diff: HashMap<(usize, usize), Vec<Vec<i64>>>,
    // (F1, F2, F2', f, e): f ∈ Hom(F2, F2'), e ∈ G(F1, F2) ↦ f·e ∈ G(F1, F2')
    left: HashMap<Key, Vec<i64>>,
    // (F2, F1', F1, f, e): f ∈ Hom(F1', F1), e ∈ G(F1, F2) ↦ e·f ∈ G(F1', F2)
    right: HashMap<Key, Vec<i64>>,
}

impl Bimodule {
    pub fn new(source: BimoduleFile, first: &FiniteGradedCategory, second: &FiniteGradedCategory) -> Result<Self> {
        let invalid = |e: Error| match e {
            Error::IncompleteModel(m) => Error::InvalidModel(m),
            other => other,
        };
        let mut values = HashMap::new();
        for v in &source.values {
            let key = (first.object(&v.src).map_err(invalid)?, second.object(&v.dst).map_err(invalid)?);
            unique_names(&v.basis, &format!("G({}, {})", v.src, v.dst))?;
            if values.insert(key, v.basis.clone()).is_some() {
                return Err(Error::InvalidModel(format!("G({}, {}) given twice", v.src, v.dst)));
            }
        }
        let mut diff = HashMap::new();
        for v in &source.values {
            let key = (first.object(&v.src).map_err(invalid)?, second.object(&v.dst).map_err(invalid)?);
            let basis = &values[&key];
            let mut d = vec![vec![0; basis.len()]; basis.len()];
            for entry in &v.differential {
                let what = format!("d({}) in G({}, {})", entry.element, v.src, v.dst);
                let i = position(basis, &entry.element, &what)?;
                let image = resolve(basis, &entry.coeffs, &what)?;
                check_degree(basis, &image, basis[i].degree + 1, &what)?;
                d[i] = image;
            }
            diff.insert(key, d);
        }
        let mut module = Bimodule { source: BimoduleFile::default(), values, diff, left: HashMap::new(), right: HashMap::new() };
        module.fill_identities(first, second);
        for a in &source.left_actions {
            let f1 = first.object(&a.fixed).map_err(invalid)?;
            let (s, t) = (second.object(&a.src).map_err(invalid)?, second.object(&a.dst).map_err(invalid)?);
            let what = format!("left action of {} on {}", a.morphism, a.element);
            let m = position(second.hom(s, t), &a.morphism, &what)?;
            let (src_basis, dst_basis) = (module.require(f1, s, &what)?, module.require(f1, t, &what)?);
            let e = position(src_basis, &a.element, &what)?;
            let image = resolve(dst_basis, &a.coeffs, &what)?;
            check_degree(dst_basis, &image, second.hom(s, t)[m].degree + src_basis[e].degree, &what)?;
            if s == t && second.hom(s, t)[m].name == IDENTITY {
                return Err(Error::InvalidModel(format!("{what}: identity actions are implicit")));
            }
            module.left.insert((f1, s, t, m, e), image);
        }
        for a in &source.right_actions {
            let f2 = second.object(&a.fixed).map_err(invalid)?;
            let (s, t) = (first.object(&a.src).map_err(invalid)?, first.object(&a.dst).map_err(invalid)?);
            let what = format!("right action of {} on {}", a.morphism, a.element);
            let m = position(first.hom(s, t), &a.morphism, &what)?;
            let (src_basis, dst_basis) = (module.require(t, f2, &what)?, module.require(s, f2, &what)?);
            let e = position(src_basis, &a.element, &what)?;
            let image = resolve(dst_basis, &a.coeffs, &what)?;
            check_degree(dst_basis, &image, first.hom(s, t)[m].degree + src_basis[e].degree, &what)?;
            if s == t && first.hom(s, t)[m].name == IDENTITY {
                return Err(Error::InvalidModel(format!("{what}: identity actions are implicit")));
            }
            module.right.insert((f2, s, t, m, e), image);
        }
        module.source = source;
        module.check_laws(first, second)?;
        Ok(module)
    }

    fn require(&self, f1: usize, f2: usize, what: &str) -> Result<&[Generator]> {
        self.values
            .get(&(f1, f2))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidModel(format!("{what}: bimodule value is not given")))
    }

    fn fill_identities(&mut self, first: &FiniteGradedCategory, second: &FiniteGradedCategory) {
        let keys: Vec<_> = self.values.keys().copied().collect();
        for (f1, f2) in keys {
            let n = self.values[&(f1, f2)].len();
            debug_assert_eq!(first.hom(f1, f1)[0].name, IDENTITY);
            debug_assert_eq!(second.hom(f2, f2)[0].name, IDENTITY);
            for e in 0..n {
                self.left.insert((f1, f2, f2, 0, e), unit(n, e));
                self.right.insert((f2, f1, f1, 0, e), unit(n, e));
            }
        }
    }

    pub fn to_file(&self) -> &BimoduleFile {
        &self.source
    }

    pub fn value(&self, f1: usize, f2: usize) -> Option<&[Generator]> {
        self.values.get(&(f1, f2)).map(Vec::as_slice)
    }

    /// `d(e)` for a basis element `e` of `G(f1, f2)`.
    pub fn differential(&self, f1: usize, f2: usize, e: usize) -> Vec<i64> {
        self.diff[&(f1, f2)][e].clone()
    }

    /// `f·e` for `f ∈ Hom(f2, f2t)` in the second category and `e ∈ G(f1, f2)`.
    pub fn left_act(&self, f1: usize, f2: usize, f2t: usize, f: usize, e: usize) -> Vec<i64> {
        self.left
            .get(&(f1, f2, f2t, f, e))
            .cloned()
            .unwrap_or_else(|| vec![0; self.values.get(&(f1, f2t)).map_or(0, Vec::len)])
    }

    /// `e·f` for `f ∈ Hom(f1s, f1)` in the first category and `e ∈ G(f1, f2)`.
    pub fn right_act(&self, f2: usize, f1s: usize, f1: usize, f: usize, e: usize) -> Vec<i64> {
        self.right
            .get(&(f2, f1s, f1, f, e))
            .cloned()
            .unwrap_or_else(|| vec![0; self.values.get(&(f1s, f2)).map_or(0, Vec::len)])
    }

    fn apply_diff(&self, f1: usize, f2: usize, v: &[i64]) -> Vec<i64> {
        let d = &self.diff[&(f1, f2)];
        let mut out = vec![0; v.len()];
        for (e, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            axpy(&mut out, c, &d[e]);
        }
        out
    }

    fn left_vec(&self, f1: usize, f2: usize, f2t: usize, f: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.values[&(f1, f2t)].len()];
        for (e, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            if let Some(img) = self.left.get(&(f1, f2, f2t, f, e)) {
                axpy(&mut out, c, img);
            }
        }
        out
    }

    fn right_vec(&self, f2: usize, f1s: usize, f1: usize, f: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.values[&(f1s, f2)].len()];
        for (e, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            if let Some(img) = self.right.get(&(f2, f1s, f1, f, e)) {
                axpy(&mut out, c, img);
            }
        }
        out
    }

    fn check_laws(&self, first: &FiniteGradedCategory, second: &FiniteGradedCategory) -> Result<()> {
        let fail = |law: &str| Err(Error::InvalidModel(format!("bimodule violates {law}")));
        let n1 = first.objects().len();
        let n2 = second.objects().len();
        let defined = |a: usize, b: usize| self.values.contains_key(&(a, b));
        for (&(a, b), basis) in &self.values {
            for e in 0..basis.len() {
                let de = self.differential(a, b, e);
                if self.apply_diff(a, b, &de).iter().any(|&x| x != 0) {
                    return fail("d² = 0");
                }
                // left: associativity and compatibility with d
                for b2 in (0..n2).filter(|&b2| defined(a, b2)) {
                    for f in 0..second.hom(b, b2).len() {
                        let fe = self.left_act(a, b, b2, f, e);
                        if self.apply_diff(a, b2, &fe) != self.left_vec(a, b, b2, f, &de) {
                            return fail("d(f·e) = f·d(e)");
                        }
                        for b3 in (0..n2).filter(|&b3| defined(a, b3)) {
                            for g in 0..second.hom(b2, b3).len() {
                                let lhs = self.left_vec(a, b2, b3, g, &fe);
                                let gf = second.compose(b, b2, b3, f, g);
                                let mut rhs = vec![0; self.values[&(a, b3)].len()];
                                for (k, &c) in gf.iter().enumerate().filter(|(_, &c)| c != 0) {
                                    axpy(&mut rhs, c, &self.left_act(a, b, b3, k, e));
                                }
                                if lhs != rhs {
                                    return fail("associativity of the left action");
                                }
                            }
                        }
                        // (f·e)·h = f·(e·h)
                        for a2 in (0..n1).filter(|&a2| defined(a2, b) && defined(a2, b2)) {
                            for h in 0..first.hom(a2, a).len() {
                                let lhs = self.right_vec(b2, a2, a, h, &fe);
                                let eh = self.right_act(b, a2, a, h, e);
                                let rhs = self.left_vec(a2, b, b2, f, &eh);
                                if lhs != rhs {
                                    return fail("compatibility of the two actions");
                                }
                            }
                        }
                    }
                }
                // right: associativity and compatibility with d
                for a2 in (0..n1).filter(|&a2| defined(a2, b)) {
                    for f in 0..first.hom(a2, a).len() {
                        let ef = self.right_act(b, a2, a, f, e);
                        if self.apply_diff(a2, b, &ef) != self.right_vec(b, a2, a, f, &de) {
                            return fail("d(e·f) = d(e)·f");
                        }
                        for a3 in (0..n1).filter(|&a3| defined(a3, b)) {
                            for g in 0..first.hom(a3, a2).len() {
                                let lhs = self.right_vec(b, a3, a2, g, &ef);
                                let fg = first.compose(a3, a2, a, g, f);
                                let mut rhs = vec![0; self.values[&(a3, b)].len()];
                                for (k, &c) in fg.iter().enumerate().filter(|(_, &c)| c != 0) {
                                    axpy(&mut rhs, c, &self.right_act(b, a3, a, k, e));
                                }
                                if lhs != rhs {
                                    return fail("associativity of the right action");
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cohomology dimensions of the complex `G(f1, f2)`.
    pub fn cohomology(&self, f1: usize, f2: usize) -> Option<GradedDims> {
        let basis = self.values.get(&(f1, f2))?;
        let Some((lo, hi)) = basis.iter().map(|g| (g.degree, 1)).collect::<GradedDims>().support() else {
            return Some(GradedDims::new());
        };
        let in_degree = |p: i32| -> Vec<usize> { (0..basis.len()).filter(|&i| basis[i].degree == p).collect() };
        let rank_d = |p: i32| -> usize {
            let (src, dst) = (in_degree(p), in_degree(p + 1));
            let m = IntMatrix::from_fn(dst.len(), src.len(), |r, c| self.diff[&(f1, f2)][src[c]][dst[r]]);
            intmat::rank(&m)
        };
        Some(
            (lo..=hi)
                .map(|p| (p, (in_degree(p).len() - rank_d(p) - rank_d(p - 1)) as u64))
                .collect(),
        )
    }
}

fn position(basis: &[Generator], name: &str, what: &str) -> Result<usize> {
    basis
        .iter()
        .position(|g| g.name == name)
        .ok_or_else(|| Error::InvalidModel(format!("{what}: no generator named '{name}'")))
}
