//! Truncated one-parameter formal deformations of oriented dialgebras.
//!
//! Power series are stored as coefficient vectors of length `N + 1`; every
//! identity is checked coefficient-wise modulo `t^{N+1}`.

use num_traits::Zero;

use crate::cohomology::Engine;
use crate::config::EngineConfig;
use crate::degree1::{coboundary, Degree1Cochain};
use crate::dialgebra::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::oriented::OrientedDialgebra;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    pub order: usize,
    /// `m^l_0, …, m^l_N`.
    pub ml: Vec<StructureTensor>,
    /// `m^r_0, …, m^r_N`.
    pub mr: Vec<StructureTensor>,
    /// `phi[i][g]` is the matrix of `φ_i(g, ·)`.
    pub phi: Vec<Vec<Matrix>>,
}

/// `Ψ_t = Σ ψ_i t^i` with `ψ_0 = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationEquivalence {
    pub order: usize,
    pub psi: Vec<Matrix>,
}

impl TruncatedDeformation {
    /// `m_t = m_0`, `Φ_t = ρ`.
    pub fn constant(od: &OrientedDialgebra, order: usize) -> Self {
        let d = od.dim();
        let n = od.group().order();
        let mut ml = vec![StructureTensor::zeros(d); order + 1];
        let mut mr = ml.clone();
        ml[0] = od.dialgebra().left().clone();
        mr[0] = od.dialgebra().right().clone();
        let mut phi = vec![vec![Matrix::zeros(d, d); n]; order + 1];
        phi[0] = od.actions().to_vec();
        TruncatedDeformation { order, ml, mr, phi }
    }

    fn check_shape(&self, od: &OrientedDialgebra) -> Result<()> {
        let (d, n, len) = (od.dim(), od.group().order(), self.order + 1);
        let ok = self.ml.len() == len
            && self.mr.len() == len
            && self.phi.len() == len
            && self.ml.iter().chain(&self.mr).all(|t| t.dim() == d)
            && self.phi.iter().all(|p| p.len() == n && p.iter().all(|m| m.rows() == d && m.cols() == d));
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "deformation of order {} does not match dimension {d} and group order {n}",
                self.order
            )))
        }
    }
}

impl DeformationEquivalence {
    pub fn identity(dim: usize, order: usize) -> Self {
        let mut psi = vec![Matrix::zeros(dim, dim); order + 1];
        psi[0] = Matrix::identity(dim);
        DeformationEquivalence { order, psi }
    }

    /// Coefficients of `Ψ_t^{-1}` modulo `t^{N+1}`.
    pub fn inverse_series(&self) -> Vec<Matrix> {
        let d = self.psi[0].rows();
        let mut chi = vec![Matrix::identity(d)];
        for n in 1..=self.order {
            let mut acc = Matrix::zeros(d, d);
            for i in 1..=n {
                acc = acc.sub(&self.psi[i].mul(&chi[n - i]).expect("square")).expect("square");
            }
            chi.push(acc);
        }
        chi
    }
}

/// Compositions `(i, j)` with `i + j = n`.
fn splits2(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).map(move |i| (i, n - i))
}

fn splits3(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=n).flat_map(move |i| (0..=n - i).map(move |j| (i, j, n - i - j)))
}

/// `t^n` coefficient of `Σ m_i(a_j x, b_k y)` as a tensor.
fn series_compose(m: &[StructureTensor], outer: &[Matrix], a: &[Matrix], b: &[Matrix], n: usize) -> StructureTensor {
    let d = m[0].dim();
    let mut acc = StructureTensor::zeros(d);
    for (o, rest) in splits2(n) {
        for (i, j, k) in splits3(rest) {
            acc = acc.add(&m[i].compose(&outer[o], &a[j], &b[k]));
        }
    }
    acc
}

/// `Ψ · def · Ψ^{-1}`: the deformation `def'` with
/// `m'(x, y) = Ψ m(Ψ^{-1}x, Ψ^{-1}y)` and `Φ'(g) = Ψ Φ(g) Ψ^{-1}`, so that
/// `Ψ` is an equivalence from `def` to `def'`.
pub fn transport(def: &TruncatedDeformation, eq: &DeformationEquivalence) -> Result<TruncatedDeformation> {
    if eq.order != def.order {
        return Err(Error::ShapeMismatch("orders of deformation and equivalence differ".into()));
    }
    let chi = eq.inverse_series();
    let n_ord = def.order;
    let ml = (0..=n_ord).map(|n| series_compose(&def.ml, &eq.psi, &chi, &chi, n)).collect();
    let mr = (0..=n_ord).map(|n| series_compose(&def.mr, &eq.psi, &chi, &chi, n)).collect();
    let groups = def.phi[0].len();
    let phi = (0..=n_ord)
        .map(|n| {
            (0..groups)
                .map(|g| {
                    let d = def.phi[0][g].rows();
                    let mut acc = Matrix::zeros(d, d);
                    for (i, j, k) in splits3(n) {
                        let term = eq.psi[i].mul(&def.phi[j][g])?.mul(&chi[k])?;
                        acc = acc.add(&term)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedDeformation {
        order: def.order,
        ml,
        mr,
        phi,
    })
}

/// The clauses of the definition of a deformation, per power of `t`.
pub fn check_deformation(od: &OrientedDialgebra, def: &TruncatedDeformation) -> Report {
    let mut r = Report::new();
    if let Err(e) = def.check_shape(od) {
        r.fail("shapes", e.to_string());
        return r;
    }
    let (d, group) = (od.dim(), od.group());
    let base = od.dialgebra();
    r.record(
        "m_0 and φ_0 are the base structure",
        if def.ml[0] != *base.left() {
            Some("m^l_0 ≠ ⊣".to_string())
        } else if def.mr[0] != *base.right() {
            Some("m^r_0 ≠ ⊢".to_string())
        } else {
            (0..group.order())
                .find(|&g| def.phi[0][g] != *od.action(g))
                .map(|g| format!("φ_0({g}) ≠ ρ({g})"))
        },
    );
    let unit_series: Vec<Matrix> = (0..=def.order)
        .map(|i| if i == 0 { Matrix::identity(d) } else { Matrix::zeros(d, d) })
        .collect();
    for n in 0..=def.order {
        r.record(format!("dialgebra axioms at t^{n}"), axiom_coefficient(def, n));

        r.record(
            format!("Φ composition at t^{n}"),
            (0..group.order())
                .flat_map(|a| (0..group.order()).map(move |b| (a, b)))
                .find(|&(a, b)| {
                    let mut acc = Matrix::zeros(d, d);
                    for (i, j) in splits2(n) {
                        acc = acc.add(&def.phi[i][a].mul(&def.phi[j][b]).expect("square")).expect("square");
                    }
                    acc != def.phi[n][group.mul(a, b)]
                })
                .map(|(a, b)| format!("φ_{n}({a}·{b}) ≠ Σ φ_i({a}) φ_j({b})")),
        );

        for (name, m) in [("⊣", &def.ml), ("⊢", &def.mr)] {
            let mut witness = None;
            for g in 0..group.order() {
                let phi_g: Vec<Matrix> = def.phi.iter().map(|p| p[g].clone()).collect();
                // Σ φ_i(g) m_j(y_1, y_2)
                let lhs = series_compose(m, &phi_g, &unit_series, &unit_series, n);
                let rhs = if group.epsilon(g) == 1 {
                    series_compose(m, &unit_series, &phi_g, &phi_g, n)
                } else {
                    series_compose(&swapped(m), &unit_series, &phi_g, &phi_g, n)
                };
                if lhs != rhs {
                    witness = Some(format!("g = {g}"));
                    break;
                }
            }
            r.record(format!("twisted compatibility of Φ with m^{name} at t^{n}"), witness);
        }
    }
    r
}

/// `(x, y) ↦ m(y, x)`.
fn swapped(m: &[StructureTensor]) -> Vec<StructureTensor> {
    m.iter().map(swap_arguments).collect()
}

fn swap_arguments(t: &StructureTensor) -> StructureTensor {
    StructureTensor::from_fn(t.dim(), |i, j, k| t.get(j, i, k).clone())
}

/// First failing axiom of the `t^n` coefficient, if any.
fn axiom_coefficient(def: &TruncatedDeformation, n: usize) -> Option<String> {
    let d = def.ml[0].dim();
    // The t^n coefficient of each axiom sums the composite over splits i + j = n.
    use crate::dialgebra::DialgebraAxiom as A;
    let basis = |i: usize| {
        let mut e = vec![crate::linalg::Rational::zero(); d];
        e[i] = num_traits::One::one();
        e
    };
    let pick = |left: bool, k: usize| if left { &def.ml[k] } else { &def.mr[k] };
    for axiom in A::ALL {
        // (inner_lhs, outer_lhs, inner_rhs, outer_rhs, rhs_nests_left)
        let (il, ol, ir, or, nest_left) = match axiom {
            A::LeftAssociative => (true, true, true, true, false),
            A::RightAssociative => (false, false, false, false, false),
            A::LeftAbsorbsRight => (true, true, false, true, false),
            A::Middle => (false, true, true, false, false),
            A::RightAbsorbsLeft => (true, false, false, false, true),
        };
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let mut lhs = vec![crate::linalg::Rational::zero(); d];
                    let mut rhs = lhs.clone();
                    for (i, j) in splits2(n) {
                        let l = pick(ol, i).apply(pick(il, j).basis_product(x, y), &basis(z));
                        let rr = if nest_left {
                            pick(or, i).apply(pick(ir, j).basis_product(x, y), &basis(z))
                        } else {
                            pick(or, i).apply(&basis(x), pick(ir, j).basis_product(y, z))
                        };
                        for k in 0..d {
                            lhs[k] += &l[k];
                            rhs[k] += &rr[k];
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("{} at basis triple ({x}, {y}, {z})", axiom.equation()));
                    }
                }
            }
        }
    }
    None
}

/// `(m_n, θ_n)` with `θ_n(g, x) = −φ_n(g, g⁻¹x)`, packaged as a degree-one
/// cochain (`β^l = m^l_n`, `β^r = m^r_n`, `α = θ_n`).
pub fn infinitesimal(od: &OrientedDialgebra, def: &TruncatedDeformation, n: usize) -> Result<Degree1Cochain> {
    def.check_shape(od)?;
    if n == 0 || n > def.order {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: def.order,
        });
    }
    if let Some(i) = (1..n).find(|&i| !def.ml[i].is_zero() || !def.mr[i].is_zero() || def.phi[i].iter().any(|m| !m.is_zero())) {
        return Err(Error::PrecedingTermsNonzero { order: n, index: i });
    }
    let group = od.group();
    let alpha = (0..group.order())
        .map(|g| Ok(def.phi[n][g].mul(od.action(group.inv(g)))?.scale(&-crate::linalg::rat(1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Degree1Cochain {
        alpha,
        beta_left: def.ml[n].clone(),
        beta_right: def.mr[n].clone(),
    })
}

/// Checks that `eq` is an equivalence from `def2` to `def1`:
/// `Ψ m_2(y_1, y_2) = m_1(Ψ y_1, Ψ y_2)` and `Ψ Φ_2(g) = Φ_1(g) Ψ`.
pub fn check_equivalence(
    od: &OrientedDialgebra,
    def1: &TruncatedDeformation,
    def2: &TruncatedDeformation,
    eq: &DeformationEquivalence,
) -> Report {
    let mut r = Report::new();
    let d = od.dim();
    let shape = def1
        .check_shape(od)
        .and_then(|_| def2.check_shape(od))
        .err()
        .map(|e| e.to_string())
        .or_else(|| {
            (def1.order != def2.order || eq.order != def1.order || eq.psi.len() != eq.order + 1)
                .then(|| "orders differ".to_string())
        })
        .or_else(|| eq.psi.iter().any(|m| m.rows() != d || m.cols() != d).then(|| format!("ψ_i must be {d}x{d}")));
    if let Some(w) = shape {
        r.fail("shapes", w);
        return r;
    }
    r.record("ψ_0 = id", (eq.psi[0] != Matrix::identity(d)).then(|| "ψ_0 ≠ I".to_string()));
    let unit: Vec<Matrix> = (0..=eq.order)
        .map(|i| if i == 0 { Matrix::identity(d) } else { Matrix::zeros(d, d) })
        .collect();
    for n in 0..=eq.order {
        for (name, m1, m2) in [("l", &def1.ml, &def2.ml), ("r", &def1.mr, &def2.mr)] {
            let lhs = series_compose(m2, &eq.psi, &unit, &unit, n);
            let rhs = series_compose(m1, &unit, &eq.psi, &eq.psi, n);
            let witness = (lhs != rhs).then(|| first_tensor_difference(&lhs, &rhs));
            r.record(format!("Ψ intertwines m^{name} at t^{n}"), witness);
        }
        let witness = (0..od.group().order())
            .find(|&g| {
                let mut lhs = Matrix::zeros(d, d);
                let mut rhs = Matrix::zeros(d, d);
                for (i, j) in splits2(n) {
                    lhs = lhs.add(&eq.psi[i].mul(&def2.phi[j][g]).expect("square")).expect("square");
                    rhs = rhs.add(&def1.phi[i][g].mul(&eq.psi[j]).expect("square")).expect("square");
                }
                lhs != rhs
            })
            .map(|g| format!("g = {g}"));
        r.record(format!("Ψ intertwines Φ at t^{n}"), witness);
    }
    r
}

fn first_tensor_difference(a: &StructureTensor, b: &StructureTensor) -> String {
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            if a.basis_product(i, j) != b.basis_product(i, j) {
                return format!("basis pair ({i}, {j})");
            }
        }
    }
    String::new()
}

/// For equivalent deformations, `ψ_1` is a cochain whose coboundary is the
/// difference of the first infinitesimals; returns it after verifying.
pub fn infinitesimals_cohomologous(
    od: &OrientedDialgebra,
    def1: &TruncatedDeformation,
    def2: &TruncatedDeformation,
    eq: &DeformationEquivalence,
) -> Result<Matrix> {
    if let Some(c) = check_equivalence(od, def1, def2, eq).first_failure() {
        return Err(Error::CertificateFailure(format!(
            "not an equivalence: {} ({})",
            c.name,
            c.witness.clone().unwrap_or_default()
        )));
    }
    if eq.order < 1 {
        return Err(Error::CertificateFailure("order 0 has no infinitesimal".into()));
    }
    let diff = infinitesimal(od, def2, 1)?.sub(&infinitesimal(od, def1, 1)?);
    let gamma = eq.psi[1].clone();
    if coboundary(od, &gamma)? != diff {
        return Err(Error::CertificateFailure("coboundary of ψ_1 differs from the difference of infinitesimals".into()));
    }
    Ok(gamma)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub h1_dim: usize,
    /// Representatives of `H̃^1`, as candidate infinitesimals.
    pub candidates: Vec<Degree1Cochain>,
}

impl RigidityReport {
    /// Vanishing of `H̃^1` is necessary for the probe to report nothing; it is
    /// not a proof of rigidity.
    pub fn obstruction_space_trivial(&self) -> bool {
        self.h1_dim == 0
    }
}

pub fn rigidity_probe(od: &OrientedDialgebra) -> Result<RigidityReport> {
    let engine = Engine::new(od.clone(), EngineConfig::default())?;
    let h1 = engine.equivariant_cohomology(1)?;
    let candidates = h1
        .representatives
        .iter()
        .map(|v| Degree1Cochain::from_total_vector(od.dim(), od.group().order(), v))
        .collect::<Result<Vec<_>>>()?;
    Ok(RigidityReport {
        h1_dim: h1.dim,
        candidates,
    })
}
