//! Oriented groups `(G, ε)` and dialgebras with a compatible action.

use crate::dialgebra::Dialgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::report::Report;

/// A finite group by multiplication table (identity at index 0) with a
/// homomorphism `ε: G → {±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGroup {
    table: Vec<Vec<usize>>,
    epsilon: Vec<i8>,
    inverse: Vec<usize>,
}

/// Checks the group axioms and that `ε` is a homomorphism into `{±1}`.
pub fn check_oriented_group(table: &[Vec<usize>], epsilon: &[i8]) -> Report {
    let mut r = Report::new();
    let n = table.len();
    let shape = if n == 0 {
        Some("empty table".to_string())
    } else if let Some(row) = table.iter().position(|row| row.len() != n) {
        Some(format!("row {row} has length {}", table[row].len()))
    } else if let Some((a, b)) = pairs(n).find(|&(a, b)| table[a][b] >= n) {
        Some(format!("{a}·{b} = {} is not an element", table[a][b]))
    } else if epsilon.len() != n {
        Some(format!("epsilon has {} entries for {n} elements", epsilon.len()))
    } else {
        None
    };
    let failed_shape = shape.is_some();
    r.record("table shape", shape);
    if failed_shape {
        return r;
    }
    r.record(
        "identity",
        (0..n)
            .find(|&a| table[0][a] != a || table[a][0] != a)
            .map(|a| format!("element 0 is not neutral against {a}")),
    );
    let mut assoc = None;
    'outer: for a in 0..n {
        for (b, c) in pairs(n) {
            if table[table[a][b]][c] != table[a][table[b][c]] {
                assoc = Some(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                break 'outer;
            }
        }
    }
    r.record("associativity", assoc);
    r.record(
        "inverses",
        (0..n)
            .find(|&a| !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0))
            .map(|a| format!("element {a} has no inverse")),
    );
    r.record(
        "epsilon values",
        epsilon
            .iter()
            .position(|&e| e != 1 && e != -1)
            .map(|a| format!("ε({a}) = {}", epsilon[a])),
    );
    r.record(
        "epsilon homomorphism",
        pairs(n)
            .find(|&(a, b)| epsilon[table[a][b]] != epsilon[a] * epsilon[b])
            .map(|(a, b)| format!("ε({a}·{b}) ≠ ε({a})ε({b})")),
    );
    r
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

impl OrientedGroup {
    pub fn new(table: Vec<Vec<usize>>, epsilon: Vec<i8>) -> Result<Self> {
        let report = check_oriented_group(&table, &epsilon);
        if let Some(c) = report.first_failure() {
            return Err(Error::InvalidGroup(format!(
                "{}: {}",
                c.name,
                c.witness.clone().unwrap_or_default()
            )));
        }
        let n = table.len();
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("checked")).collect();
        Ok(OrientedGroup { table, epsilon, inverse })
    }

    pub fn trivial() -> Self {
        OrientedGroup::new(vec![vec![0]], vec![1]).expect("trivial group")
    }

    /// `{±1}` with `ε = id`; element 1 is `−1`.
    pub fn sign_group() -> Self {
        OrientedGroup::new(vec![vec![0, 1], vec![1, 0]], vec![1, -1]).expect("order two group")
    }

    /// `ℤ/n`; with `oriented`, `ε(k) = (−1)^k` (needs `n` even).
    pub fn cyclic(n: usize, oriented: bool) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let eps = (0..n).map(|k| if oriented && k % 2 == 1 { -1 } else { 1 }).collect();
        OrientedGroup::new(table, eps)
    }

    /// `S_n` with `ε = sgn`, elements in lexicographic order of their
    /// one-line notation; `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect()))
                    .collect()
            })
            .collect();
        let eps = perms.iter().map(|p| sign(p)).collect();
        OrientedGroup::new(table, eps)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn epsilon(&self, a: usize) -> i8 {
        self.epsilon[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn epsilons(&self) -> &[i8] {
        &self.epsilon
    }

    pub fn is_trivially_oriented(&self) -> bool {
        self.epsilon.iter().all(|&e| e == 1)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn sign(p: &[usize]) -> i8 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A dialgebra with a linear action `ρ(g)` of an oriented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedDialgebra {
    dialgebra: Dialgebra,
    group: OrientedGroup,
    action: Vec<Matrix>,
}

impl OrientedDialgebra {
    pub fn new(dialgebra: Dialgebra, group: OrientedGroup, action: Vec<Matrix>) -> Result<Self> {
        let od = Self::new_unchecked(dialgebra, group, action)?;
        if let Some(c) = check_oriented_dialgebra(&od).first_failure() {
            return Err(Error::AxiomFailure(format!(
                "{}: {}",
                c.name,
                c.witness.clone().unwrap_or_default()
            )));
        }
        Ok(od)
    }

    /// Checks shapes only.
    pub fn new_unchecked(dialgebra: Dialgebra, group: OrientedGroup, action: Vec<Matrix>) -> Result<Self> {
        let d = dialgebra.dim();
        if action.len() != group.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if action.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::ShapeMismatch(format!("action matrices must be {d}x{d}")));
        }
        Ok(OrientedDialgebra {
            dialgebra,
            group,
            action,
        })
    }

    /// The trivial group acting by the identity.
    pub fn with_trivial_group(dialgebra: Dialgebra) -> Self {
        let d = dialgebra.dim();
        OrientedDialgebra {
            dialgebra,
            group: OrientedGroup::trivial(),
            action: vec![Matrix::identity(d)],
        }
    }

    pub fn dialgebra(&self) -> &Dialgebra {
        &self.dialgebra
    }

    pub fn group(&self) -> &OrientedGroup {
        &self.group
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.dialgebra.dim()
    }
}

/// `ρ(g)·x`.
pub fn orbit_action(od: &OrientedDialgebra, g: usize, x: &[Rational]) -> Result<Vec<Rational>> {
    if g >= od.group.order() {
        return Err(Error::IndexOutOfRange {
            index: g,
            max: od.group.order() - 1,
        });
    }
    od.action[g].mul_vec(x)
}

/// G-module axioms plus `g(x∘y) = gx∘gy` (`ε(g) = 1`) or `gy∘gx` (`ε(g) = −1`)
/// for both products on all basis pairs.
pub fn check_oriented_dialgebra(od: &OrientedDialgebra) -> Report {
    let mut r = Report::new();
    let (n, d) = (od.group.order(), od.dim());
    let rho = &od.action;
    r.record(
        "identity acts trivially",
        (!rho[0].eq(&Matrix::identity(d))).then(|| "ρ(0) ≠ I".to_string()),
    );
    r.record(
        "action is a homomorphism",
        pairs(n)
            .find(|&(a, b)| rho[a].mul(&rho[b]).ok().as_ref() != Some(&rho[od.group.mul(a, b)]))
            .map(|(a, b)| format!("ρ({a})ρ({b}) ≠ ρ({a}·{b})")),
    );
    r.record(
        "action is invertible",
        (0..n)
            .find(|&g| rho[g].inverse().is_none())
            .map(|g| format!("ρ({g}) is singular")),
    );
    let col = |g: usize, i: usize| (0..d).map(|k| rho[g].get(k, i).clone()).collect::<Vec<_>>();
    for (name, t) in [("twisted compatibility ⊣", od.dialgebra.left()), ("twisted compatibility ⊢", od.dialgebra.right())] {
        let mut witness = None;
        'search: for g in 0..n {
            for (i, j) in pairs(d) {
                let lhs = rho[g].mul_vec(t.basis_product(i, j)).expect("square");
                let rhs = if od.group.epsilon(g) == 1 {
                    t.apply(&col(g, i), &col(g, j))
                } else {
                    t.apply(&col(g, j), &col(g, i))
                };
                if lhs != rhs {
                    witness = Some(format!("g={g}, basis pair ({i}, {j})"));
                    break 'search;
                }
            }
        }
        r.record(name, witness);
    }
    r
}

/// Named oriented dialgebras used by tests, fixtures and benchmarks.
pub mod examples {
    use super::*;
    use crate::dialgebra::examples::{dual_numbers, functional_dialgebra, square_zero_plane};
    use crate::dialgebra::{from_associative, from_differential};

    fn flip() -> Matrix {
        Matrix::from_i64(&[&[1, 0], &[0, -1]])
    }

    /// `ℚ[u]/(u²)` with `−1` acting by `u ↦ −u`, orientation nontrivial.
    pub fn dual_numbers_sign() -> OrientedDialgebra {
        let d = from_associative(&dual_numbers()).expect("associative");
        OrientedDialgebra::new(d, OrientedGroup::sign_group(), vec![Matrix::identity(2), flip()]).expect("valid")
    }

    /// The same action with the trivial orientation.
    pub fn dual_numbers_cyclic() -> OrientedDialgebra {
        let d = from_associative(&dual_numbers()).expect("associative");
        let z2 = OrientedGroup::cyclic(2, false).expect("valid group");
        OrientedDialgebra::new(d, z2, vec![Matrix::identity(2), flip()]).expect("valid")
    }

    /// `x⊣y = φ(y)x`, `x⊢y = φ(x)y` with `Z/2` acting by `diag(1, −1)`.
    pub fn functional_cyclic() -> OrientedDialgebra {
        let z2 = OrientedGroup::cyclic(2, false).expect("valid group");
        OrientedDialgebra::new(functional_dialgebra(), z2, vec![Matrix::identity(2), flip()]).expect("valid")
    }

    /// Zero products with `−1` acting by `−I`.
    pub fn zero_sign(dim: usize) -> OrientedDialgebra {
        let neg = Matrix::identity(dim).scale(&crate::linalg::rat(-1));
        OrientedDialgebra::new(Dialgebra::zero(dim), OrientedGroup::sign_group(), vec![Matrix::identity(dim), neg])
            .expect("valid")
    }

    /// `ℚ[x, y]/(x², xy, y²)` with the derivation `x ↦ y`, trivial group.
    pub fn square_zero_plane_differential() -> OrientedDialgebra {
        let diff = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
        let d = from_differential(&square_zero_plane(), &diff).expect("square-zero derivation");
        OrientedDialgebra::with_trivial_group(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialgebra::examples::*;
    use crate::dialgebra::{from_associative, Dialgebra};
    use crate::linalg::rat;
    use proptest::prelude::*;

    #[test]
    fn example_groups() {
        assert_eq!(OrientedGroup::trivial().order(), 1);
        let z2 = OrientedGroup::sign_group();
        assert_eq!((z2.epsilon(1), z2.inv(1)), (-1, 1));
        let s3 = OrientedGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.epsilons().iter().filter(|&&e| e == -1).count(), 3);
        assert!(!(0..6).all(|a| (0..6).all(|b| s3.mul(a, b) == s3.mul(b, a))));
        assert!(OrientedGroup::cyclic(4, true).is_ok());
        assert!(matches!(OrientedGroup::cyclic(3, true), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn broken_groups_report_witnesses() {
        let r = check_oriented_group(&[vec![0, 1], vec![1, 1]], &[1, 1]);
        assert!(!r.passed());
        let r = check_oriented_group(&[vec![0, 1], vec![1, 0]], &[1, 1]);
        assert!(r.passed());
        // ε(1·1) = ε(0) = 1 but ε(1)² — fine; a non-homomorphism needs order ≥ 3
        let z3: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let r = check_oriented_group(&z3, &[1, -1, -1]);
        assert_eq!(r.first_failure().unwrap().name, "epsilon homomorphism");
    }

    #[test]
    fn trivial_group_always_passes() {
        let od = OrientedDialgebra::with_trivial_group(functional_dialgebra());
        assert!(check_oriented_dialgebra(&od).passed());
    }

    #[test]
    fn commutative_product_with_identity_reversal() {
        let d = from_associative(&dual_numbers()).unwrap();
        let od = OrientedDialgebra::new(d.clone(), OrientedGroup::sign_group(), vec![Matrix::identity(2), Matrix::identity(2)]);
        assert!(od.is_ok());
        // u ↦ −u is an automorphism and an anti-automorphism
        let flip = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(OrientedDialgebra::new(d.clone(), OrientedGroup::sign_group(), vec![Matrix::identity(2), flip]).is_ok());
        // −I does not preserve the unit
        let neg = Matrix::from_i64(&[&[-1, 0], &[0, -1]]);
        let od = OrientedDialgebra::new_unchecked(d, OrientedGroup::sign_group(), vec![Matrix::identity(2), neg]).unwrap();
        let r = check_oriented_dialgebra(&od);
        assert_eq!(r.first_failure().unwrap().name, "twisted compatibility ⊣");
    }

    #[test]
    fn functional_dialgebra_has_no_reversing_action_by_swap() {
        // search over signed permutation matrices for an order-two reversing action
        let d = functional_dialgebra();
        let mut found = vec![];
        for &(a, b, c, e) in &[(1, 0, 0, 1), (1, 0, 0, -1), (-1, 0, 0, 1), (0, 1, 1, 0), (0, -1, -1, 0), (-1, 0, 0, -1)] {
            let m = Matrix::from_i64(&[&[a, b], &[c, e]]);
            let od = OrientedDialgebra::new_unchecked(d.clone(), OrientedGroup::sign_group(), vec![Matrix::identity(2), m.clone()]).unwrap();
            if check_oriented_dialgebra(&od).passed() {
                found.push(m);
            }
        }
        assert!(found.is_empty());
        // with the trivial orientation diag(1, −1) is an automorphism
        let z2 = OrientedGroup::cyclic(2, false).unwrap();
        let od = OrientedDialgebra::new(d, z2, vec![Matrix::identity(2), Matrix::from_i64(&[&[1, 0], &[0, -1]])]);
        assert!(od.is_ok());
    }

    #[test]
    fn orbit_action_examples() {
        let d = Dialgebra::zero(2);
        let neg = Matrix::from_i64(&[&[-1, 0], &[0, -1]]);
        let od = OrientedDialgebra::new(d, OrientedGroup::sign_group(), vec![Matrix::identity(2), neg]).unwrap();
        assert_eq!(orbit_action(&od, 0, &[rat(3), rat(4)]).unwrap(), vec![rat(3), rat(4)]);
        assert_eq!(orbit_action(&od, 1, &[rat(1), rat(0)]).unwrap(), vec![rat(-1), rat(0)]);
        assert!(orbit_action(&od, 1, &[rat(1)]).is_err());
        assert!(orbit_action(&od, 2, &[rat(1), rat(0)]).is_err());
    }

    proptest! {
        #[test]
        fn inverse_property(x in proptest::collection::vec(-5i64..6, 2), k in 0usize..6) {
            let d = Dialgebra::zero(2);
            let s3 = OrientedGroup::symmetric(3).unwrap();
            // sign representation ⊕ trivial
            let action = (0..6).map(|g| Matrix::from_i64(&[&[s3.epsilon(g) as i64, 0], &[0, 1]])).collect();
            let od = OrientedDialgebra::new(d, s3.clone(), action).unwrap();
            let x: Vec<Rational> = x.into_iter().map(rat).collect();
            let y = orbit_action(&od, s3.inv(k), &x).unwrap();
            prop_assert_eq!(orbit_action(&od, k, &y).unwrap(), x);
        }
    }
}
