//! Seeded spot checks of identities that hold for every unimodular lattice.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sod_core::intmat::{self, IntMatrix};
use sod_core::lattice::isometry_search;
use sod_core::{EulerLattice, KClass, Side};

use crate::CommandResult;

/// Upper unitriangular Gram matrix, as for a full exceptional collection.
fn random_lattice(rng: &mut ChaCha8Rng) -> EulerLattice {
    let n = rng.gen_range(1..=4);
    let gram = IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => rng.gen_range(-5..=5),
        std::cmp::Ordering::Equal => 1,
        std::cmp::Ordering::Greater => 0,
    });
    EulerLattice::unlabeled(gram).expect("square")
}

/// A short product of unit elementary matrices and sign flips.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n, n);
    for _ in 0..rng.gen_range(0..=3) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = IntMatrix::identity(n, n);
        e[(i, j)] = if i == j { -1 } else if rng.gen() { 1 } else { -1 };
        p = intmat::checked_mul(&p, &e).expect("small entries");
    }
    p
}

fn one_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let l = random_lattice(rng);
    let n = l.rank();
    let err = |e: sod_core::Error| e.to_string();

    let s = l.serre_matrix().map_err(err)?;
    if l.transform(&s).map_err(err)? != *l.gram() {
        return Err(format!("Serre operator is not an isometry of {:?}", l.gram_rows()));
    }

    let p = random_unimodular(rng, n);
    let moved = EulerLattice::unlabeled(l.transform(&p).map_err(err)?).map_err(err)?;
    let found = isometry_search(&l, &moved, 3).map_err(err)?;
    match found.matrix() {
        Some(q) if l.transform(&q).map_err(err)? == *moved.gram() => {}
        _ => return Err(format!("no isometry found for {:?} under {:?}", l.gram_rows(), intmat::to_rows(&p))),
    }

    let e = l.basis_class(rng.gen_range(0..n));
    let v = KClass::new((0..n).map(|_| rng.gen_range(-6..=6)).collect());
    let right = l.mutate(&e, &v, Side::Right).map_err(err)?;
    let left = l.mutate(&e, &v, Side::Left).map_err(err)?;
    if l.pair(&right, &e).map_err(err)? != 0 || l.pair(&e, &left).map_err(err)? != 0 {
        return Err(format!("mutation of {v} through {e} is not orthogonal"));
    }

    if !v.is_zero() {
        let c = l.orthogonal_complement(&v, Side::Left).map_err(err)?;
        if !c.is_saturated() || c.lattice.rank() + 1 != n {
            return Err(format!("complement of {v} in {:?} is not a saturated corank-1 sublattice", l.gram_rows()));
        }
    }
    Ok(())
}

pub fn run(seed: u64, cases: u32) -> CommandResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failures: Vec<String> = (0..cases).filter_map(|_| one_case(&mut rng).err()).collect();
    let payload = json!({ "seed": seed, "cases": cases, "failures": failures });
    let mut text = format!("seed {seed}: {} of {cases} cases passed\n", cases as usize - failures.len());
    for f in &failures {
        text.push_str(&format!("  {f}\n"));
    }
    if failures.is_empty() {
        CommandResult::ok(payload, text)
    } else {
        CommandResult::failed(payload, text)
    }
}
