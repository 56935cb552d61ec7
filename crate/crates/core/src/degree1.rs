//! Degree-one cochains `(α, β)` and a direct evaluator of the degree-one
//! cocycle equations.
//!
//! The evaluator is written straight from the explicit equations and does not
//! use the tree machinery or the assembled differentials, so it can serve as
//! an independent check of the total complex in degree one.

use num_traits::Zero;

use crate::dialgebra::{Dialgebra, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::oriented::OrientedDialgebra;

/// `α(g, ·)` as one matrix per group element (column `j` holds `α(g, e_j)`),
/// and `β` on the two trees of `Y_2`: `β^l = β([2 1]; ·,·)`,
/// `β^r = β([1 2]; ·,·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree1Cochain {
    pub alpha: Vec<Matrix>,
    pub beta_left: StructureTensor,
    pub beta_right: StructureTensor,
}

impl Degree1Cochain {
    pub fn zero(dim: usize, group_order: usize) -> Self {
        Degree1Cochain {
            alpha: vec![Matrix::zeros(dim, dim); group_order],
            beta_left: StructureTensor::zeros(dim),
            beta_right: StructureTensor::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.beta_left.dim()
    }

    pub fn group_order(&self) -> usize {
        self.alpha.len()
    }

    pub fn check_shape(&self, od: &OrientedDialgebra) -> Result<()> {
        let d = od.dim();
        let ok = self.beta_left.dim() == d
            && self.beta_right.dim() == d
            && self.alpha.len() == od.group().order()
            && self.alpha.iter().all(|m| m.rows() == d && m.cols() == d);
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "degree-one cochain does not match dimension {d} and group order {}",
                od.group().order()
            )))
        }
    }

    /// Flat vector in the layout of total degree one: `β` (trees `[1 2]`,
    /// `[2 1]`) followed by `α`.
    pub fn to_total_vector(&self) -> Vec<Rational> {
        let d = self.dim();
        let mut v = Vec::with_capacity(2 * d * d * d + self.alpha.len() * d * d);
        for t in [&self.beta_right, &self.beta_left] {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        v.push(t.get(i, j, k).clone());
                    }
                }
            }
        }
        for a in &self.alpha {
            for j in 0..d {
                for k in 0..d {
                    v.push(a.get(k, j).clone());
                }
            }
        }
        v
    }

    pub fn from_total_vector(dim: usize, group_order: usize, v: &[Rational]) -> Result<Self> {
        let d = dim;
        let beta_len = d * d * d;
        if v.len() != 2 * beta_len + group_order * d * d {
            return Err(Error::ShapeMismatch(format!("degree-one vector has length {}", v.len())));
        }
        let tensor = |off: usize| StructureTensor::from_fn(d, |i, j, k| v[off + (i * d + j) * d + k].clone());
        let alpha = (0..group_order)
            .map(|g| {
                let off = 2 * beta_len + g * d * d;
                Matrix::from_fn(d, d, |k, j| v[off + j * d + k].clone())
            })
            .collect();
        Ok(Degree1Cochain {
            alpha,
            beta_right: tensor(0),
            beta_left: tensor(beta_len),
        })
    }

    pub fn add(&self, other: &Degree1Cochain) -> Degree1Cochain {
        Degree1Cochain {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a.add(b).expect("same shape")).collect(),
            beta_left: self.beta_left.add(&other.beta_left),
            beta_right: self.beta_right.add(&other.beta_right),
        }
    }

    pub fn sub(&self, other: &Degree1Cochain) -> Degree1Cochain {
        Degree1Cochain {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a.sub(b).expect("same shape")).collect(),
            beta_left: self.beta_left.sub(&other.beta_left),
            beta_right: self.beta_right.sub(&other.beta_right),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(Matrix::is_zero) && self.beta_left.is_zero() && self.beta_right.is_zero()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum P {
    L,
    R,
}

/// `Y_3` in canonical order with, per tree, the products `o_0..o_3` and
/// which tree of `Y_2` each face `d_0..d_3` is. Tabulated by hand.
const Y3: [([P; 4], [P; 4]); 5] = {
    use P::*;
    [
        ([R, R, R, R], [R, R, R, R]), // [1 2 3]
        ([R, R, L, L], [L, L, R, R]), // [1 3 1]
        ([R, L, R, R], [R, R, R, L]), // [2 1 3]
        ([L, L, R, L], [R, L, L, L]), // [3 1 2]
        ([L, L, L, L], [L, L, L, L]), // [3 2 1]
    ]
};

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); d];
    e[i] = num_traits::One::one();
    e
}

fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Residuals of the degree-one cocycle equations, in a fixed order:
///
/// 1. `α(gh, x) − g α(h, g⁻¹x) − α(g, x)` for all `g, h`, basis `x`;
/// 2. for `∘ ∈ {⊣, ⊢}` (with `β^∘ = β^l, β^r`), all `g` and basis `x_1, x_2`:
///    `x_1∘α(g,x_2) − α(g, x_1∘x_2) + α(g,x_1)∘x_2 − β^∘(x_1,x_2) + g β^∘(g⁻¹x_1, g⁻¹x_2)`,
///    with the arguments of the last term swapped when `ε(g) = −1`;
/// 3. `x_1 o_0 β(d_0y; x_2, x_3) − β(d_1y; x_1 o_1 x_2, x_3) + β(d_2y; x_1, x_2 o_2 x_3)
///    − β(d_3y; x_1, x_2) o_3 x_3` for every `y ∈ Y_3` and basis triple.
pub fn degree1_residual(od: &OrientedDialgebra, c: &Degree1Cochain) -> Result<Vec<Rational>> {
    c.check_shape(od)?;
    let d = od.dim();
    let group = od.group();
    let n = group.order();
    let dia: &Dialgebra = od.dialgebra();
    let prod = |p: P| match p {
        P::L => dia.left(),
        P::R => dia.right(),
    };
    let beta = |p: P| match p {
        P::L => &c.beta_left,
        P::R => &c.beta_right,
    };
    let alpha = |g: usize, x: &[Rational]| c.alpha[g].mul_vec(x).expect("shape checked");
    let act = |g: usize, x: &[Rational]| od.action(g).mul_vec(x).expect("shape checked");
    let mut out = Vec::new();

    for g in 0..n {
        for h in 0..n {
            for j in 0..d {
                let x = unit(d, j);
                let lhs = alpha(group.mul(g, h), &x);
                let rhs = add_vec(&act(g, &alpha(h, &act(group.inv(g), &x))), &alpha(g, &x));
                out.extend(sub_vec(&lhs, &rhs));
            }
        }
    }

    for p in [P::L, P::R] {
        let m = prod(p);
        let b = beta(p);
        for g in 0..n {
            let gi = group.inv(g);
            for i in 0..d {
                for j in 0..d {
                    let (x1, x2) = (unit(d, i), unit(d, j));
                    let lhs = add_vec(
                        &sub_vec(&m.apply(&x1, &alpha(g, &x2)), &alpha(g, m.basis_product(i, j))),
                        &m.apply(&alpha(g, &x1), &x2),
                    );
                    let (y1, y2) = (act(gi, &x1), act(gi, &x2));
                    let twisted = if group.epsilon(g) == 1 { b.apply(&y1, &y2) } else { b.apply(&y2, &y1) };
                    let rhs = sub_vec(b.basis_product(i, j), &act(g, &twisted));
                    out.extend(sub_vec(&lhs, &rhs));
                }
            }
        }
    }

    for (o, f) in Y3.iter() {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x1, x3) = (unit(d, i), unit(d, k));
                    let t0 = prod(o[0]).apply(&x1, beta(f[0]).basis_product(j, k));
                    let t1 = beta(f[1]).apply(prod(o[1]).basis_product(i, j), &x3);
                    let t2 = beta(f[2]).apply(&x1, prod(o[2]).basis_product(j, k));
                    let t3 = prod(o[3]).apply(beta(f[3]).basis_product(i, j), &x3);
                    out.extend(sub_vec(&add_vec(&sub_vec(&t0, &t1), &t2), &t3));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree1Check {
    pub holds: bool,
    pub residual: Vec<Rational>,
}

pub fn is_degree1_cocycle(od: &OrientedDialgebra, c: &Degree1Cochain) -> Result<Degree1Check> {
    let residual = degree1_residual(od, c)?;
    Ok(Degree1Check {
        holds: residual.iter().all(Zero::is_zero),
        residual,
    })
}

/// The coboundary pair of `γ ∈ Hom(D, D)` (column convention):
/// `β(y; x_1, x_2) = x_1 o_0 γ(x_2) − γ(x_1 o_1 x_2) + γ(x_1) o_2 x_2` on
/// `[2 1]` (all `⊣`) and `[1 2]` (all `⊢`), and `α(g, x) = γ(x) − gγ(g⁻¹x)`.
pub fn coboundary(od: &OrientedDialgebra, gamma: &Matrix) -> Result<Degree1Cochain> {
    let d = od.dim();
    if gamma.rows() != d || gamma.cols() != d {
        return Err(Error::ShapeMismatch(format!("γ must be {d}x{d}")));
    }
    let dia = od.dialgebra();
    let col = |j: usize| (0..d).map(|r| gamma.get(r, j).clone()).collect::<Vec<_>>();
    let beta_of = |m: &StructureTensor| {
        let mut t = StructureTensor::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let v = add_vec(
                    &sub_vec(&m.apply(&unit(d, i), &col(j)), &gamma.mul_vec(m.basis_product(i, j)).expect("square")),
                    &m.apply(&col(i), &unit(d, j)),
                );
                for (k, x) in v.into_iter().enumerate() {
                    t.set(i, j, k, x);
                }
            }
        }
        t
    };
    let group = od.group();
    let alpha = (0..group.order())
        .map(|g| {
            let conj = od.action(g).mul(gamma)?.mul(od.action(group.inv(g)))?;
            gamma.sub(&conj)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Degree1Cochain {
        alpha,
        beta_left: beta_of(dia.left()),
        beta_right: beta_of(dia.right()),
    })
}
