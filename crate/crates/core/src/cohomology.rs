//! Tree-indexed cochains, the dialgebra coboundary, the group action on
//! cochains and the reduced equivariant bicomplex.
//!
//! Layouts. A level-`n` cochain is indexed by `(tree, i_1..i_n, k)`: tree in
//! canonical order, the input multi-index in lexicographic order, and the
//! output coordinate last. A `(p, q)` bicochain prepends a `p`-tuple of group
//! elements (lexicographic). Total degree `n` collects the bidegrees
//! `p + q = n + 1`, `q ≥ 1`, in order of increasing `p`.

use num_traits::{One, Zero};

use crate::config::EngineConfig;
use crate::dialgebra::Dialgebra;
use crate::error::{Error, Result};
use crate::linalg::{sparse_cohomology, Rational, SparseMatrix};
use crate::oriented::OrientedDialgebra;
use crate::trees::{catalan, TreeCatalog};

/// Number of coordinates of `CY^n(D, D)` for `dim D = d`.
pub fn cochain_dim(d: usize, n: usize) -> usize {
    catalan(n) as usize * d.pow(n as u32) * d
}

/// Number of coordinates of the `(p, q)` entry of the bicomplex.
pub fn bicochain_dim(group_order: usize, d: usize, p: usize, q: usize) -> usize {
    group_order.pow(p as u32) * cochain_dim(d, q)
}

/// Bidegrees making up total degree `n`, in layout order.
pub fn total_bidegrees(n: usize) -> Vec<(usize, usize)> {
    (0..=n).map(|p| (p, n + 1 - p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub level: usize,
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicochain {
    pub p: usize,
    pub q: usize,
    pub coeffs: Vec<Rational>,
}

/// A cohomology space: its dimension and representative cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub dim: usize,
    pub representatives: Vec<Vec<Rational>>,
}

/// Assembles the matrices of one oriented dialgebra.
#[derive(Clone, Debug)]
pub struct Engine {
    od: OrientedDialgebra,
    config: EngineConfig,
    catalog: TreeCatalog,
}

impl Engine {
    pub fn new(od: OrientedDialgebra, config: EngineConfig) -> Result<Self> {
        config.check_dim(od.dim())?;
        config.check_group_order(od.group().order())?;
        let catalog = TreeCatalog::new(config.max_tree_level)?;
        Ok(Engine { od, config, catalog })
    }

    /// An engine for a bare dialgebra (trivial group).
    pub fn for_dialgebra(d: Dialgebra, config: EngineConfig) -> Result<Self> {
        Engine::new(OrientedDialgebra::with_trivial_group(d), config)
    }

    pub fn oriented(&self) -> &OrientedDialgebra {
        &self.od
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.od.dim()
    }

    pub fn group_order(&self) -> usize {
        self.od.group().order()
    }

    pub fn bicochain_dim(&self, p: usize, q: usize) -> usize {
        bicochain_dim(self.group_order(), self.dim(), p, q)
    }

    pub fn total_dim(&self, n: usize) -> usize {
        total_bidegrees(n).into_iter().map(|(p, q)| self.bicochain_dim(p, q)).sum()
    }

    fn check_level(&self, n: usize) -> Result<()> {
        self.config.check_tree_level(n)?;
        self.config.check_space(cochain_dim(self.dim(), n))
    }

    /// Matrix of `δ^n : CY^n → CY^{n+1}`.
    pub fn delta(&self, n: usize) -> Result<SparseMatrix> {
        self.check_level(n + 1)?;
        let d = self.dim();
        let dia = self.od.dialgebra();
        let level = self.catalog.level(n + 1);
        let dn = d.pow(n as u32);
        let col = |t: usize, j: usize, k: usize| (t * dn + j) * d + k;
        let mut rows = Vec::with_capacity(cochain_dim(d, n + 1));
        let mut digits = vec![0usize; n + 1];
        let mut merged = vec![0usize; n];
        for (faces, orient) in level.faces.iter().zip(&level.orientations) {
            for jj in 0..dn * d {
                decode(jj, d, &mut digits);
                let tail = jj % dn;
                let head = jj / d;
                for kk in 0..d {
                    let mut row: Vec<(usize, Rational)> = Vec::new();
                    // x_1 o_0 f(d_0 y; x_2, …)
                    let t0 = dia.product(orient[0]);
                    for k in 0..d {
                        let c = t0.get(digits[0], k, kk);
                        if !c.is_zero() {
                            row.push((col(faces[0], tail, k), c.clone()));
                        }
                    }
                    // (−1)^i f(d_i y; …, x_i o_i x_{i+1}, …)
                    for i in 1..=n {
                        let ti = dia.product(orient[i]);
                        for m in 0..d {
                            let c = ti.get(digits[i - 1], digits[i], m);
                            if c.is_zero() {
                                continue;
                            }
                            merged[..i - 1].copy_from_slice(&digits[..i - 1]);
                            merged[i - 1] = m;
                            merged[i..].copy_from_slice(&digits[i + 1..]);
                            let c = if i % 2 == 0 { c.clone() } else { -c.clone() };
                            row.push((col(faces[i], encode(&merged, d), kk), c));
                        }
                    }
                    // (−1)^{n+1} f(d_{n+1} y; x_1, …, x_n) o_{n+1} x_{n+1}
                    let tl = dia.product(orient[n + 1]);
                    for k in 0..d {
                        let c = tl.get(k, digits[n], kk);
                        if !c.is_zero() {
                            let c = if (n + 1).is_multiple_of(2) { c.clone() } else { -c.clone() };
                            row.push((col(faces[n + 1], head, k), c));
                        }
                    }
                    rows.push(row);
                }
            }
        }
        Ok(SparseMatrix::from_rows(cochain_dim(d, n), rows))
    }

    /// Matrix of `f ↦ g·f` on level-`n` cochains.
    pub fn action(&self, g: usize, n: usize) -> Result<SparseMatrix> {
        self.check_level(n)?;
        let group = self.od.group();
        if g >= group.order() {
            return Err(Error::IndexOutOfRange {
                index: g,
                max: group.order() - 1,
            });
        }
        let d = self.dim();
        let rho = self.od.action(g);
        let rho_inv = self.od.action(group.inv(g));
        let reversed = group.epsilon(g) == -1;
        let sign = if reversed {
            Rational::from_integer(self.config.sign_exponent.sign(n).into())
        } else {
            Rational::one()
        };
        let dn = d.pow(n as u32);
        let trees = self.catalog.level(n).len();
        // Coefficients of g⁻¹ e_j.
        let inv_cols: Vec<Vec<(usize, Rational)>> = (0..d)
            .map(|j| (0..d).filter(|&a| !rho_inv.get(a, j).is_zero()).map(|a| (a, rho_inv.get(a, j).clone())).collect())
            .collect();
        let out_rows: Vec<Vec<(usize, Rational)>> = (0..d)
            .map(|kk| (0..d).filter(|&k| !rho.get(kk, k).is_zero()).map(|k| (k, &sign * rho.get(kk, k))).collect())
            .collect();
        let mut digits = vec![0usize; n];
        // For each input multi-index, the expansion of the (possibly reversed)
        // transformed arguments in the basis.
        let expansions: Vec<Vec<(usize, Rational)>> = (0..dn)
            .map(|jj| {
                decode(jj, d, &mut digits);
                let mut terms: Vec<(usize, Rational)> = vec![(0, Rational::one())];
                for i in 0..n {
                    let src = if reversed { digits[n - 1 - i] } else { digits[i] };
                    let mut next = Vec::with_capacity(terms.len() * inv_cols[src].len());
                    for (idx, c) in &terms {
                        for (a, b) in &inv_cols[src] {
                            next.push((idx * d + a, c * b));
                        }
                    }
                    terms = next;
                }
                terms
            })
            .collect();
        let mut rows = Vec::with_capacity(cochain_dim(d, n));
        for t in 0..trees {
            for terms in &expansions {
                for out in &out_rows {
                    let mut row = Vec::with_capacity(terms.len() * out.len());
                    for (aa, c) in terms {
                        for (k, r) in out {
                            row.push(((t * dn + aa) * d + k, c * r));
                        }
                    }
                    rows.push(row);
                }
            }
        }
        Ok(SparseMatrix::from_rows(cochain_dim(d, n), rows))
    }

    /// `∂′ : C^{p,q} → C^{p,q+1}`, the coboundary applied in each group slot.
    pub fn horizontal(&self, p: usize, q: usize) -> Result<SparseMatrix> {
        self.check_bidegree(p, q + 1)?;
        let delta = self.delta(q)?;
        let copies = self.group_order().pow(p as u32);
        Ok(SparseMatrix::block_diagonal(&vec![&delta; copies]))
    }

    /// `∂″ : C^{p,q} → C^{p+1,q}`, the group-cochain differential with the
    /// first face twisted by the action on cochains.
    pub fn vertical(&self, p: usize, q: usize) -> Result<SparseMatrix> {
        if q == 0 {
            return Err(Error::ShapeMismatch("the reduced bicomplex starts at q = 1".into()));
        }
        self.check_bidegree(p + 1, q)?;
        let gn = self.group_order();
        let group = self.od.group();
        let block = cochain_dim(self.dim(), q);
        let actions = (0..gn).map(|g| self.action(g, q)).collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::with_capacity(gn.pow(p as u32 + 1) * block);
        let mut tuple = vec![0usize; p + 1];
        let mut src = vec![0usize; p];
        for tt in 0..gn.pow(p as u32 + 1) {
            decode(tt, gn, &mut tuple);
            let mut offsets: Vec<(usize, Rational)> = Vec::with_capacity(p + 1);
            // middle faces: multiply adjacent entries
            for i in 1..=p {
                src[..i - 1].copy_from_slice(&tuple[..i - 1]);
                src[i - 1] = group.mul(tuple[i - 1], tuple[i]);
                src[i..].copy_from_slice(&tuple[i + 1..]);
                let s = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                offsets.push((encode(&src, gn) * block, s));
            }
            // last face forgets g_{p+1}
            let s = if (p + 1).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            offsets.push((encode(&tuple[..p], gn) * block, s));
            let first = encode(&tuple[1..], gn) * block;
            let act = &actions[tuple[0]];
            for r in 0..block {
                let mut row: Vec<(usize, Rational)> = act.row(r).iter().map(|(c, x)| (first + c, x.clone())).collect();
                row.extend(offsets.iter().map(|(o, s)| (o + r, s.clone())));
                rows.push(row);
            }
        }
        Ok(SparseMatrix::from_rows(gn.pow(p as u32) * block, rows))
    }

    fn check_bidegree(&self, p: usize, q: usize) -> Result<()> {
        self.check_level(q)?;
        self.config.check_space(self.bicochain_dim(p, q))
    }

    /// `D^n : Tot^n → Tot^{n+1}` with `D = ∂′ + (−1)^q ∂″` on `C^{p,q}`.
    pub fn total(&self, n: usize) -> Result<SparseMatrix> {
        self.config.check_total_degree(n)?;
        let src = total_bidegrees(n);
        let dst = total_bidegrees(n + 1);
        let col_dims: Vec<usize> = src.iter().map(|&(p, q)| self.bicochain_dim(p, q)).collect();
        let row_dims: Vec<usize> = dst.iter().map(|&(p, q)| self.bicochain_dim(p, q)).collect();
        let mut blocks: Vec<Vec<Option<SparseMatrix>>> = vec![vec![None; src.len()]; dst.len()];
        for (j, &(p, q)) in src.iter().enumerate() {
            // dst index p holds (p, q + 1), index p + 1 holds (p + 1, q)
            blocks[p][j] = Some(self.horizontal(p, q)?);
            let v = self.vertical(p, q)?;
            blocks[p + 1][j] = Some(if q % 2 == 0 { v } else { v.scale(&-Rational::one()) });
        }
        SparseMatrix::from_blocks(&row_dims, &col_dims, &blocks)
    }

    /// `HY^n(D, D)`, with `δ^{−1} = 0`.
    pub fn dialgebra_cohomology(&self, n: usize) -> Result<CohomologyResult> {
        let d_out = self.delta(n)?;
        let d_in = if n == 0 {
            SparseMatrix::zeros(cochain_dim(self.dim(), 0), 0)
        } else {
            self.delta(n - 1)?
        };
        let (dim, representatives) = sparse_cohomology(&d_out, &d_in, true)?;
        Ok(CohomologyResult { dim, representatives })
    }

    /// `H̃^n_G(D, D)`. Fails with `NonComplex` if `D^n ∘ D^{n−1} ≠ 0`.
    pub fn equivariant_cohomology(&self, n: usize) -> Result<CohomologyResult> {
        let d_out = self.total(n)?;
        let d_in = if n == 0 {
            SparseMatrix::zeros(self.total_dim(0), 0)
        } else {
            self.total(n - 1)?
        };
        let (dim, representatives) = sparse_cohomology(&d_out, &d_in, true).map_err(|e| match e {
            Error::NonComplex(_) => Error::NonComplex(format!("D^{n} ∘ D^{} ≠ 0", n as isize - 1)),
            e => e,
        })?;
        Ok(CohomologyResult { dim, representatives })
    }

    /// `g·f` for a cochain.
    pub fn act_on_cochain(&self, g: usize, f: &Cochain) -> Result<Cochain> {
        let m = self.action(g, f.level)?;
        Ok(Cochain {
            level: f.level,
            coeffs: m.mul_vec(&f.coeffs)?,
        })
    }

    /// Splits a total-degree vector into its bicochain components.
    pub fn split_total(&self, n: usize, v: &[Rational]) -> Result<Vec<Bicochain>> {
        if v.len() != self.total_dim(n) {
            return Err(Error::ShapeMismatch(format!(
                "total degree {n} has dimension {}, got {}",
                self.total_dim(n),
                v.len()
            )));
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for (p, q) in total_bidegrees(n) {
            let len = self.bicochain_dim(p, q);
            out.push(Bicochain {
                p,
                q,
                coeffs: v[offset..offset + len].to_vec(),
            });
            offset += len;
        }
        Ok(out)
    }
}

/// Writes the base-`b` digits of `x` (most significant first) into `out`.
fn decode(mut x: usize, b: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = x % b;
        x /= b;
    }
}

fn encode(digits: &[usize], b: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * b + x)
}

/// `δ^n` for a bare dialgebra with the default configuration.
pub fn delta_matrix(d: &Dialgebra, n: usize) -> Result<SparseMatrix> {
    Engine::for_dialgebra(d.clone(), EngineConfig::default())?.delta(n)
}

pub fn dialgebra_cohomology(d: &Dialgebra, n: usize) -> Result<CohomologyResult> {
    Engine::for_dialgebra(d.clone(), EngineConfig::default())?.dialgebra_cohomology(n)
}

pub fn equivariant_cohomology(od: &OrientedDialgebra, n: usize) -> Result<CohomologyResult> {
    Engine::new(od.clone(), EngineConfig::default())?.equivariant_cohomology(n)
}

pub fn act_on_cochain(od: &OrientedDialgebra, g: usize, f: &Cochain) -> Result<Cochain> {
    Engine::new(od.clone(), EngineConfig::default())?.act_on_cochain(g, f)
}

pub fn vertical_differential(od: &OrientedDialgebra, p: usize, q: usize) -> Result<SparseMatrix> {
    Engine::new(od.clone(), EngineConfig::default())?.vertical(p, q)
}

pub fn horizontal_differential(od: &OrientedDialgebra, p: usize, q: usize) -> Result<SparseMatrix> {
    Engine::new(od.clone(), EngineConfig::default())?.horizontal(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SignExponent;
    use crate::dialgebra::examples::*;
    use crate::dialgebra::from_associative;
    use crate::linalg::{rat, Matrix};
    use crate::oriented::OrientedGroup;

    fn dual_numbers_z2(sign: SignExponent) -> Engine {
        let d = from_associative(&dual_numbers()).unwrap();
        let flip = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let od = OrientedDialgebra::new(d, OrientedGroup::sign_group(), vec![Matrix::identity(2), flip]).unwrap();
        let config = EngineConfig {
            sign_exponent: sign,
            ..EngineConfig::default()
        };
        Engine::new(od, config).unwrap()
    }

    #[test]
    fn zero_products_give_zero_delta() {
        let e = Engine::for_dialgebra(Dialgebra::zero(1), EngineConfig::default()).unwrap();
        assert!(e.delta(0).unwrap().is_zero());
        let e = Engine::for_dialgebra(Dialgebra::zero(2), EngineConfig::default()).unwrap();
        assert_eq!(e.dialgebra_cohomology(1).unwrap().dim, 4);
        assert_eq!(cochain_dim(2, 2), 16);
    }

    #[test]
    fn delta_zero_is_commutator_like() {
        // δ^0 m (x) = x ⊣ m − m ⊢ x; for a commutative algebra it vanishes
        let e = Engine::for_dialgebra(from_associative(&dual_numbers()).unwrap(), EngineConfig::default()).unwrap();
        assert!(e.delta(0).unwrap().is_zero());
        let e = Engine::for_dialgebra(functional_dialgebra(), EngineConfig::default()).unwrap();
        // m = e_1: e_0 ⊣ e_1 = 0, e_1 ⊢ e_0 = 0; e_1 ⊣ e_1 = 0, e_1 ⊢ e_1 = 0 → δ^0 e_1 = 0
        let m = e.delta(0).unwrap();
        assert_eq!(m.mul_vec(&[rat(0), rat(1)]).unwrap(), vec![rat(0); 4]);
        // m = e_0: x ↦ x ⊣ e_0 − e_0 ⊢ x = x − x = 0
        assert_eq!(m.mul_vec(&[rat(1), rat(0)]).unwrap(), vec![rat(0); 4]);
    }

    #[test]
    fn delta_squares_to_zero() {
        for d in [from_associative(&field()).unwrap(), from_associative(&dual_numbers()).unwrap(), functional_dialgebra()] {
            let e = Engine::for_dialgebra(d, EngineConfig::default()).unwrap();
            for n in 0..3 {
                assert!(e.delta(n + 1).unwrap().mul(&e.delta(n).unwrap()).unwrap().is_zero(), "n = {n}");
            }
        }
    }

    #[test]
    fn action_is_a_representation() {
        let e = dual_numbers_z2(SignExponent::Definition);
        for n in 0..4 {
            let a = e.action(1, n).unwrap();
            assert_eq!(a.mul(&a).unwrap(), SparseMatrix::identity(cochain_dim(2, n)), "n = {n}");
            assert_eq!(e.action(0, n).unwrap(), SparseMatrix::identity(cochain_dim(2, n)));
        }
    }

    #[test]
    fn vertical_squares_to_zero() {
        let e = dual_numbers_z2(SignExponent::Definition);
        for p in 0..3 {
            for q in 1..3 {
                let v = e.vertical(p + 1, q).unwrap().mul(&e.vertical(p, q).unwrap()).unwrap();
                assert!(v.is_zero(), "p = {p}, q = {q}");
            }
        }
    }

    #[test]
    fn vertical_on_trivial_group_alternates() {
        let e = Engine::for_dialgebra(functional_dialgebra(), EngineConfig::default()).unwrap();
        assert!(e.vertical(0, 1).unwrap().is_zero());
        assert_eq!(e.vertical(1, 1).unwrap(), SparseMatrix::identity(4));
        assert!(e.vertical(2, 1).unwrap().is_zero());
    }

    #[test]
    fn total_dims() {
        let e = dual_numbers_z2(SignExponent::Definition);
        assert_eq!(e.total_dim(0), 4);
        assert_eq!(e.total_dim(1), 16 + 8);
        assert_eq!(e.total(1).unwrap().rows(), e.total_dim(2));
    }

    #[test]
    fn resource_caps() {
        let e = Engine::for_dialgebra(Dialgebra::zero(1), EngineConfig::default()).unwrap();
        assert!(matches!(e.delta(6), Err(Error::Resource(_))));
        assert!(matches!(e.total(4), Err(Error::Resource(_))));
        assert!(matches!(
            Engine::for_dialgebra(Dialgebra::zero(5), EngineConfig::default()),
            Err(Error::Resource(_))
        ));
    }
}
