//! Singular extensions `0 → D → B → D → 0` and their degree-one cocycles.
//!
//! Coordinates on `B = D ⊕ D` put the kernel copy first.

use num_traits::Zero;

use crate::cohomology::Engine;
use crate::config::EngineConfig;
use crate::degree1::{coboundary, is_degree1_cocycle, Degree1Cochain};
use crate::dialgebra::{check_axioms, Dialgebra, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix, Rational};
use crate::oriented::{check_oriented_dialgebra, OrientedDialgebra};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularExtension {
    pub total: OrientedDialgebra,
    /// `i : D → B`, a `2d × d` matrix.
    pub inclusion: Matrix,
    /// `p : B → D`, a `d × 2d` matrix.
    pub projection: Matrix,
}

/// The section `x ↦ (0, x)`.
pub fn canonical_section(d: usize) -> Matrix {
    Matrix::from_fn(2 * d, d, |r, c| if r == d + c { Rational::from_integer(1.into()) } else { Rational::zero() })
}

fn block_product(base: &StructureTensor, beta: &StructureTensor) -> StructureTensor {
    let d = base.dim();
    let mut t = StructureTensor::zeros(2 * d);
    for a in 0..2 * d {
        for b in 0..2 * d {
            for k in 0..d {
                match (a < d, b < d) {
                    (true, true) => {}
                    // x_1 ∘ y_2 and y_1 ∘ x_2 land in the kernel
                    (true, false) => t.set(a, b, k, base.get(a, b - d, k).clone()),
                    (false, true) => t.set(a, b, k, base.get(a - d, b, k).clone()),
                    (false, false) => {
                        t.set(a, b, k, beta.get(a - d, b - d, k).clone());
                        t.set(a, b, d + k, base.get(a - d, b - d, k).clone());
                    }
                }
            }
        }
    }
    t
}

/// `B = D ⊕ D` with `(x_1,y_1)⊣(x_2,y_2) = (x_1⊣y_2 + y_1⊣x_2 + β^l(y_1,y_2), y_1⊣y_2)`,
/// likewise for `⊢` with `β^r`, and `g(x, y) = (gx − α(g, gy), gy)`.
pub fn build_extension(od: &OrientedDialgebra, c: &Degree1Cochain) -> Result<SingularExtension> {
    let check = is_degree1_cocycle(od, c)?;
    if !check.holds {
        let first = check.residual.iter().position(|x| !x.is_zero()).unwrap_or(0);
        return Err(Error::NotCocycle(format!("residual coordinate {first} is nonzero")));
    }
    let d = od.dim();
    let base = od.dialgebra();
    let dia = Dialgebra::new_unchecked(block_product(base.left(), &c.beta_left), block_product(base.right(), &c.beta_right))?;
    let action = (0..od.group().order())
        .map(|g| {
            let rho = od.action(g);
            let twist = c.alpha[g].mul(rho)?;
            Ok(Matrix::from_fn(2 * d, 2 * d, |r, col| match (r < d, col < d) {
                (true, true) => rho.get(r, col).clone(),
                (true, false) => -twist.get(r, col - d).clone(),
                (false, true) => Rational::zero(),
                (false, false) => rho.get(r - d, col - d).clone(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = OrientedDialgebra::new_unchecked(dia, od.group().clone(), action)?;
    let ext = SingularExtension {
        total,
        inclusion: Matrix::from_fn(2 * d, d, |r, col| if r == col { Rational::from_integer(1.into()) } else { Rational::zero() }),
        projection: Matrix::from_fn(d, 2 * d, |r, col| if col == d + r { Rational::from_integer(1.into()) } else { Rational::zero() }),
    };
    let report = check_singular_extension(od, &ext);
    if let Some(f) = report.first_failure() {
        return Err(Error::AxiomFailure(format!("{}: {}", f.name, f.witness.clone().unwrap_or_default())));
    }
    Ok(ext)
}

fn col(m: &Matrix, j: usize) -> Vec<Rational> {
    (0..m.rows()).map(|r| m.get(r, j).clone()).collect()
}

/// Every clause of the definition of a singular extension of `od` by itself.
pub fn check_singular_extension(od: &OrientedDialgebra, ext: &SingularExtension) -> Report {
    let mut r = Report::new();
    let d = od.dim();
    let (i, p) = (&ext.inclusion, &ext.projection);
    let b = &ext.total;
    if b.dim() != 2 * d || i.rows() != 2 * d || i.cols() != d || p.rows() != d || p.cols() != 2 * d {
        r.fail("shapes", format!("expected a {}-dimensional middle term with 2d×d and d×2d maps", 2 * d));
        return r;
    }
    if b.group() != od.group() {
        r.fail("same oriented group", "group tables or orientations differ");
        return r;
    }
    let axioms = check_axioms(b.dialgebra());
    r.record(
        "middle term is a dialgebra",
        axioms.first_failure().map(|f| format!("{} at {:?}", f.axiom.equation(), f.triple)),
    );
    let oriented = check_oriented_dialgebra(b);
    r.record(
        "middle term is oriented",
        oriented.first_failure().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
    );
    let pi = p.mul(i).expect("shapes checked");
    r.record("p ∘ i = 0", (!pi.is_zero()).then(|| "p ∘ i has a nonzero entry".to_string()));
    r.record("i injective", (rank(i) != d).then(|| format!("rank i = {}", rank(i))));
    r.record("p surjective (hence 𝕂-split)", (rank(p) != d).then(|| format!("rank p = {}", rank(p))));
    // with p∘i = 0, rank i = rank p = d gives im i = ker p
    let n = od.group().order();
    r.record(
        "i equivariant",
        (0..n)
            .find(|&g| b.action(g).mul(i).ok() != i.mul(od.action(g)).ok())
            .map(|g| format!("g = {g}")),
    );
    r.record(
        "p equivariant",
        (0..n)
            .find(|&g| p.mul(b.action(g)).ok() != od.action(g).mul(p).ok())
            .map(|g| format!("g = {g}")),
    );
    r.record(
        "p is a dialgebra morphism",
        (!b.dialgebra().is_morphism(od.dialgebra(), p)).then(|| "p does not preserve a product".to_string()),
    );
    let base = od.dialgebra();
    for (name, bt, dt) in [("⊣", b.dialgebra().left(), base.left()), ("⊢", b.dialgebra().right(), base.right())] {
        let mut sq = None;
        let mut bim = None;
        for x in 0..d {
            let ix = col(i, x);
            for y in 0..d {
                if sq.is_none() && bt.apply(&ix, &col(i, y)).iter().any(|v| !v.is_zero()) {
                    sq = Some(format!("i(e_{x}) {name} i(e_{y}) ≠ 0"));
                }
            }
            for e in 0..2 * d {
                let mut be = vec![Rational::zero(); 2 * d];
                be[e] = Rational::from_integer(1.into());
                let pb = p.mul_vec(&be).expect("shape");
                let ex: Vec<Rational> = (0..d).map(|k| Rational::from_integer(((k == x) as i64).into())).collect();
                let right = i.mul_vec(&dt.apply(&ex, &pb)).expect("shape");
                let left = i.mul_vec(&dt.apply(&pb, &ex)).expect("shape");
                if bim.is_none() && (bt.apply(&ix, &be) != right || bt.apply(&be, &ix) != left) {
                    bim = Some(format!("kernel action mismatch at e_{x}, b_{e}"));
                }
            }
        }
        r.record(format!("kernel squares to zero ({name})"), sq);
        r.record(format!("kernel is the bimodule D ({name})"), bim);
    }
    r
}

/// Left inverse of a full-column-rank matrix, `(AᵀA)⁻¹Aᵀ`.
fn left_inverse(a: &Matrix) -> Result<Matrix> {
    let at = a.transpose();
    let gram = at.mul(a)?;
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::ShapeMismatch("inclusion is not injective".into()))?;
    inv.mul(&at)
}

/// `α(g, x) = s(x) − g s(g⁻¹x)` and `β(x_1, x_2) = s(x_1)∘s(x_2) − s(x_1∘x_2)`,
/// pulled back along `i`.
pub fn extract_cocycle(od: &OrientedDialgebra, ext: &SingularExtension, section: &Matrix) -> Result<Degree1Cochain> {
    let d = od.dim();
    if section.rows() != 2 * d || section.cols() != d {
        return Err(Error::ShapeMismatch(format!("section must be {}x{d}", 2 * d)));
    }
    if ext.projection.mul(section)? != Matrix::identity(d) {
        return Err(Error::NotSection);
    }
    let back = left_inverse(&ext.inclusion)?;
    let group = od.group();
    let alpha = (0..group.order())
        .map(|g| {
            let moved = ext.total.action(g).mul(section)?.mul(od.action(group.inv(g)))?;
            back.mul(&section.sub(&moved)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let defect = |bt: &StructureTensor, dt: &StructureTensor| -> Result<StructureTensor> {
        let mut t = StructureTensor::zeros(d);
        for x in 0..d {
            for y in 0..d {
                let lhs = bt.apply(&col(section, x), &col(section, y));
                let rhs = section.mul_vec(dt.basis_product(x, y))?;
                let diff: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                for (k, v) in back.mul_vec(&diff)?.into_iter().enumerate() {
                    t.set(x, y, k, v);
                }
            }
        }
        Ok(t)
    };
    let c = Degree1Cochain {
        alpha,
        beta_left: defect(ext.total.dialgebra().left(), od.dialgebra().left())?,
        beta_right: defect(ext.total.dialgebra().right(), od.dialgebra().right())?,
    };
    if !is_degree1_cocycle(od, &c)?.holds {
        return Err(Error::NotCocycle("extracted pair fails the cocycle equations".into()));
    }
    Ok(c)
}

/// Some `γ` with `c1 − c2` equal to the coboundary of `γ`, if one exists.
pub fn cocycles_cohomologous(od: &OrientedDialgebra, c1: &Degree1Cochain, c2: &Degree1Cochain) -> Result<Option<Matrix>> {
    c1.check_shape(od)?;
    c2.check_shape(od)?;
    let engine = Engine::new(od.clone(), EngineConfig::default())?;
    let d0 = engine.total(0)?;
    let target = c1.sub(c2).to_total_vector();
    let Some(v) = d0.solve(&target) else { return Ok(None) };
    let d = od.dim();
    let gamma = Matrix::from_fn(d, d, |k, j| v[j * d + k].clone());
    if coboundary(od, &gamma)? != c1.sub(c2) {
        return Err(Error::CertificateFailure("solution of the coboundary system does not verify".into()));
    }
    Ok(Some(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialgebra::examples::*;
    use crate::dialgebra::from_associative;
    use crate::linalg::rat;
    use crate::oriented::OrientedGroup;

    fn fixture() -> OrientedDialgebra {
        let d = from_associative(&dual_numbers()).unwrap();
        let flip = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        OrientedDialgebra::new(d, OrientedGroup::sign_group(), vec![Matrix::identity(2), flip]).unwrap()
    }

    #[test]
    fn split_extension() {
        let od = fixture();
        let ext = build_extension(&od, &Degree1Cochain::zero(2, 2)).unwrap();
        assert!(check_singular_extension(&od, &ext).passed());
        // g(x, y) = (gx, gy)
        assert_eq!(ext.total.action(1), &Matrix::from_i64(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]));
        let c = extract_cocycle(&od, &ext, &canonical_section(2)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn round_trip_and_perturbed_section() {
        let od = fixture();
        let gamma = Matrix::from_i64(&[&[1, 2], &[-1, 3]]);
        let c = coboundary(&od, &gamma).unwrap();
        let ext = build_extension(&od, &c).unwrap();
        assert_eq!(extract_cocycle(&od, &ext, &canonical_section(2)).unwrap(), c);
        // s' = s + iγ'
        let shift = Matrix::from_i64(&[&[0, 1], &[2, 0]]);
        let s2 = canonical_section(2).add(&ext.inclusion.mul(&shift).unwrap()).unwrap();
        let c2 = extract_cocycle(&od, &ext, &s2).unwrap();
        assert_eq!(c2.sub(&c), coboundary(&od, &shift).unwrap());
        assert!(cocycles_cohomologous(&od, &c2, &c).unwrap().is_some());
        // coboundary pair is in the zero class
        assert!(cocycles_cohomologous(&od, &c, &Degree1Cochain::zero(2, 2)).unwrap().is_some());
    }

    #[test]
    fn non_section_rejected() {
        let od = fixture();
        let ext = build_extension(&od, &Degree1Cochain::zero(2, 2)).unwrap();
        assert_eq!(extract_cocycle(&od, &ext, &Matrix::zeros(4, 2)), Err(Error::NotSection));
    }

    #[test]
    fn non_cocycle_rejected() {
        let od = fixture();
        let mut c = Degree1Cochain::zero(2, 2);
        c.beta_left.set(1, 1, 1, rat(1));
        assert!(matches!(build_extension(&od, &c), Err(Error::NotCocycle(_))));
    }
}
