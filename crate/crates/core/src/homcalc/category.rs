use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::GradedDims;

/// Name of the identity generator that every endomorphism space starts with.
pub const IDENTITY: &str = "id";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub src: String,
    pub dst: String,
    pub basis: Vec<Generator>,
}

/// `second ∘ first` for `first: src → mid` and `second: mid → dst`, as named
/// coefficients in `Hom(src, dst)`. Absent entries compose to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionEntry {
    pub src: String,
    pub mid: String,
    pub dst: String,
    pub first: String,
    pub second: String,
    pub coeffs: BTreeMap<String, i64>,
}

/// Serializable description of a formal graded category. Identities are
/// implicit: each `Hom(X, X)` starts with a degree-0 generator named `id`,
/// and compositions with it are filled in automatically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: Vec<HomEntry>,
    #[serde(default)]
    pub compositions: Vec<CompositionEntry>,
}

impl CategoryFile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn hom(mut self, src: &str, dst: &str, basis: &[(&str, i32)]) -> Self {
        self.homs.push(HomEntry {
            src: src.into(),
            dst: dst.into(),
            basis: basis.iter().map(|&(n, d)| Generator::new(n, d)).collect(),
        });
        self
    }

    pub fn compose(mut self, src: &str, mid: &str, dst: &str, first: &str, second: &str, coeffs: &[(&str, i64)]) -> Self {
        self.compositions.push(CompositionEntry {
            src: src.into(),
            mid: mid.into(),
            dst: dst.into(),
            first: first.into(),
            second: second.into(),
            coeffs: coeffs.iter().map(|&(n, c)| (n.to_string(), c)).collect(),
        });
        self
    }

    pub fn build(self) -> Result<FiniteGradedCategory> {
        FiniteGradedCategory::new(self)
    }
}

type Key = (usize, usize, usize, usize, usize);

/// Finitely many objects with finite graded Hom spaces and an associative,
/// degree-additive composition. Higher products are zero.
#[derive(Clone, Debug)]
pub struct FiniteGradedCategory {
    source: CategoryFile,
    index: HashMap<String, usize>,
    homs: Vec<Vec<Vec<Generator>>>,
    // (x, y, z, f, g) ↦ g∘f for f ∈ Hom(x,y), g ∈ Hom(y,z)
    table: HashMap<Key, Vec<i64>>,
}

pub(crate) fn axpy(acc: &mut [i64], c: i64, v: &[i64]) {
    if c != 0 {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += c * x;
        }
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub(crate) fn resolve(basis: &[Generator], coeffs: &BTreeMap<String, i64>, what: &str) -> Result<Vec<i64>> {
    let mut v = vec![0; basis.len()];
    for (name, &c) in coeffs {
        let i = basis
            .iter()
            .position(|g| &g.name == name)
            .ok_or_else(|| Error::InvalidModel(format!("{what}: no generator named '{name}'")))?;
        v[i] += c;
    }
    Ok(v)
}

pub(crate) fn check_degree(basis: &[Generator], v: &[i64], degree: i32, what: &str) -> Result<()> {
    for (g, &c) in basis.iter().zip(v) {
        if c != 0 && g.degree != degree {
            return Err(Error::InvalidModel(format!(
                "{what}: term '{}' has degree {}, expected {degree}",
                g.name, g.degree
            )));
        }
    }
    Ok(())
}

pub(crate) fn unique_names(basis: &[Generator], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for g in basis {
        if !seen.insert(&g.name) {
            return Err(Error::InvalidModel(format!("{what}: duplicate generator '{}'", g.name)));
        }
    }
    Ok(())
}

impl FiniteGradedCategory {
    pub fn new(source: CategoryFile) -> Result<Self> {
        let n = source.objects.len();
        let mut index = HashMap::new();
        for (i, o) in source.objects.iter().enumerate() {
            if index.insert(o.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!("duplicate object '{o}'")));
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::InvalidModel(format!("unknown object '{name}'")))
        };
        let mut homs: Vec<Vec<Vec<Generator>>> = vec![vec![Vec::new(); n]; n];
        for (x, row) in homs.iter_mut().enumerate() {
            row[x].push(Generator::new(IDENTITY, 0));
        }
        let mut declared = HashSet::new();
        for h in &source.homs {
            let (x, y) = (lookup(&h.src)?, lookup(&h.dst)?);
            if !declared.insert((x, y)) {
                return Err(Error::InvalidModel(format!("Hom({}, {}) declared twice", h.src, h.dst)));
            }
            if x == y && h.basis.iter().any(|g| g.name == IDENTITY) {
                return Err(Error::InvalidModel("identities are implicit".into()));
            }
            homs[x][y].extend(h.basis.iter().cloned());
            unique_names(&homs[x][y], &format!("Hom({}, {})", h.src, h.dst))?;
        }
        let mut table: HashMap<Key, Vec<i64>> = HashMap::new();
        for (x, row) in homs.iter().enumerate() {
            for (y, basis) in row.iter().enumerate() {
                let dim = basis.len();
                for f in 0..dim {
                    table.insert((x, x, y, 0, f), unit(dim, f));
                    table.insert((x, y, y, f, 0), unit(dim, f));
                }
            }
        }
        for c in &source.compositions {
            let (x, y, z) = (lookup(&c.src)?, lookup(&c.mid)?, lookup(&c.dst)?);
            let what = format!("composition {} ∘ {}", c.second, c.first);
            let pos = |basis: &[Generator], name: &str| {
                basis
                    .iter()
                    .position(|g| g.name == name)
                    .ok_or_else(|| Error::InvalidModel(format!("{what}: no generator named '{name}'")))
            };
            let f = pos(&homs[x][y], &c.first)?;
            let g = pos(&homs[y][z], &c.second)?;
            if (x == y && f == 0) || (y == z && g == 0) {
                return Err(Error::InvalidModel(format!("{what}: compositions with identities are implicit")));
            }
            let v = resolve(&homs[x][z], &c.coeffs, &what)?;
            check_degree(&homs[x][z], &v, homs[x][y][f].degree + homs[y][z][g].degree, &what)?;
            if table.insert((x, y, z, f, g), v).is_some() {
                return Err(Error::InvalidModel(format!("{what}: given twice")));
            }
        }
        let cat = FiniteGradedCategory { source, index, homs, table };
        cat.check_associative()?;
        Ok(cat)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.objects().len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for f in 0..self.homs[x][y].len() {
                            for g in 0..self.homs[y][z].len() {
                                for h in 0..self.homs[z][w].len() {
                                    let gf = self.compose(x, y, z, f, g);
                                    let hg = self.compose(y, z, w, g, h);
                                    let mut lhs = vec![0; self.homs[x][w].len()];
                                    for (k, &c) in gf.iter().enumerate() {
                                        axpy(&mut lhs, c, &self.compose(x, z, w, k, h));
                                    }
                                    let mut rhs = vec![0; self.homs[x][w].len()];
                                    for (k, &c) in hg.iter().enumerate() {
                                        axpy(&mut rhs, c, &self.compose(x, y, w, f, k));
                                    }
                                    if lhs != rhs {
                                        return Err(Error::InvalidModel(format!(
                                            "composition is not associative on {} ∘ {} ∘ {}",
                                            self.homs[z][w][h].name, self.homs[y][z][g].name, self.homs[x][y][f].name
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.source.objects
    }

    pub fn to_file(&self) -> &CategoryFile {
        &self.source
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::IncompleteModel(format!("unknown object '{name}'")))
    }

    pub fn hom(&self, x: usize, y: usize) -> &[Generator] {
        &self.homs[x][y]
    }

    pub fn hom_dims(&self, x: usize, y: usize) -> GradedDims {
        self.homs[x][y].iter().map(|g| (g.degree, 1)).collect()
    }

    pub fn generator(&self, x: usize, y: usize, name: &str) -> Result<usize> {
        self.homs[x][y]
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::IncompleteModel(format!("no generator '{name}' in Hom({}, {})", self.source.objects[x], self.source.objects[y])))
    }

    /// `g ∘ f` for basis elements `f ∈ Hom(x,y)`, `g ∈ Hom(y,z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: usize, g: usize) -> Vec<i64> {
        self.table
            .get(&(x, y, z, f, g))
            .cloned()
            .unwrap_or_else(|| vec![0; self.homs[x][z].len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_objects() -> CategoryFile {
        CategoryFile::new()
            .object("A")
            .object("B")
            .hom("A", "B", &[("f", 0)])
            .hom("B", "A", &[("g", 1)])
            .hom("A", "A", &[("t", 1)])
            .hom("B", "B", &[("s", 1)])
            .compose("B", "A", "B", "g", "f", &[("s", 1)])
    }

    #[test]
    fn builds_and_composes() {
        let c = two_objects().compose("A", "B", "A", "f", "g", &[("t", 1)]).build().unwrap();
        let (a, b) = (c.object("A").unwrap(), c.object("B").unwrap());
        assert_eq!(c.hom_dims(a, a), GradedDims::from([(0, 1), (1, 1)]));
        assert_eq!(c.compose(b, a, b, 0, 0), vec![0, 1]);
        assert_eq!(c.compose(a, a, b, 0, 0), vec![1]);
    }

    #[test]
    fn rejects_degree_violation() {
        let bad = two_objects().compose("A", "B", "A", "f", "g", &[("id", 1)]);
        assert!(matches!(bad.build(), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn rejects_non_associative_table() {
        // (f∘g)∘f is zero since End(B) has nothing in degree 1, but f∘(g∘f) = f∘t = h
        let bad = CategoryFile::new()
            .object("A")
            .object("B")
            .hom("A", "B", &[("f", 0), ("h", 1)])
            .hom("B", "A", &[("g", 1)])
            .hom("A", "A", &[("t", 1)])
            .compose("A", "B", "A", "f", "g", &[("t", 1)])
            .compose("A", "A", "B", "t", "f", &[("h", 1)]);
        assert!(matches!(bad.build(), Err(Error::InvalidModel(m)) if m.contains("associative")));
    }

    #[test]
    fn file_round_trip() {
        let file = two_objects();
        let json = serde_json::to_string(&file).unwrap();
        let back: CategoryFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        back.build().unwrap();
    }
}
