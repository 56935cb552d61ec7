//! Finite-dimensional dialgebras given by structure constants.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Bilinear map `D × D → D` with `T[i][j][k]` the coefficient of `e_k` in
/// `e_i ∘ e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for StructureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureTensor(dim={}, {:?})", self.dim, self.to_nested())
    }
}

impl StructureTensor {
    pub fn zeros(dim: usize) -> Self {
        StructureTensor {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        StructureTensor { dim, data }
    }

    pub fn from_nested(t: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = t.len();
        let ok = t.iter().all(|a| a.len() == dim && a.iter().all(|b| b.len() == dim));
        if !ok {
            return Err(Error::ShapeMismatch(format!("structure tensor is not {dim}x{dim}x{dim}")));
        }
        Ok(StructureTensor {
            dim,
            data: t.into_iter().flatten().flatten().collect(),
        })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Rational>>> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.get(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.data[(i * d + j) * d + k] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, v: &Rational) {
        let d = self.dim;
        self.data[(i * d + j) * d + k] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `e_i ∘ e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    /// `x ∘ y` for arbitrary vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &StructureTensor) -> StructureTensor {
        StructureTensor {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &StructureTensor) -> StructureTensor {
        StructureTensor {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> StructureTensor {
        StructureTensor {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `(x, y) ↦ outer(self(inner_l x, inner_r y))`.
    pub fn compose(&self, outer: &Matrix, inner_l: &Matrix, inner_r: &Matrix) -> StructureTensor {
        let d = self.dim;
        let mut out = StructureTensor::zeros(d);
        for i in 0..d {
            let x: Vec<Rational> = (0..d).map(|r| inner_l.get(r, i).clone()).collect();
            for j in 0..d {
                let y: Vec<Rational> = (0..d).map(|r| inner_r.get(r, j).clone()).collect();
                let v = outer.mul_vec(&self.apply(&x, &y)).expect("square matrices of tensor dimension");
                for (k, vk) in v.into_iter().enumerate() {
                    out.set(i, j, k, vk);
                }
            }
        }
        out
    }
}

/// The five defining identities, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DialgebraAxiom {
    /// `(x⊣y)⊣z = x⊣(y⊣z)`
    LeftAssociative,
    /// `(x⊢y)⊢z = x⊢(y⊢z)`
    RightAssociative,
    /// `(x⊣y)⊣z = x⊣(y⊢z)`
    LeftAbsorbsRight,
    /// `(x⊢y)⊣z = x⊢(y⊣z)`
    Middle,
    /// `(x⊣y)⊢z = (x⊢y)⊢z`
    RightAbsorbsLeft,
}

impl DialgebraAxiom {
    pub const ALL: [DialgebraAxiom; 5] = [
        DialgebraAxiom::LeftAssociative,
        DialgebraAxiom::RightAssociative,
        DialgebraAxiom::LeftAbsorbsRight,
        DialgebraAxiom::Middle,
        DialgebraAxiom::RightAbsorbsLeft,
    ];

    pub fn equation(self) -> &'static str {
        match self {
            DialgebraAxiom::LeftAssociative => "(x⊣y)⊣z = x⊣(y⊣z)",
            DialgebraAxiom::RightAssociative => "(x⊢y)⊢z = x⊢(y⊢z)",
            DialgebraAxiom::LeftAbsorbsRight => "(x⊣y)⊣z = x⊣(y⊢z)",
            DialgebraAxiom::Middle => "(x⊢y)⊣z = x⊢(y⊣z)",
            DialgebraAxiom::RightAbsorbsLeft => "(x⊣y)⊢z = (x⊢y)⊢z",
        }
    }

    /// Shape `(a∘b)∘c = …`: which products appear, as `(inner_lhs, outer_lhs, inner_rhs, outer_rhs, rhs_nests_left)`.
    fn shape(self) -> (Op, Op, Op, Op, bool) {
        use Op::*;
        match self {
            DialgebraAxiom::LeftAssociative => (L, L, L, L, false),
            DialgebraAxiom::RightAssociative => (R, R, R, R, false),
            DialgebraAxiom::LeftAbsorbsRight => (L, L, R, L, false),
            DialgebraAxiom::Middle => (R, L, L, R, false),
            DialgebraAxiom::RightAbsorbsLeft => (L, R, R, R, true),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: DialgebraAxiom,
    pub triple: (usize, usize, usize),
}

/// Basis indices `(x, y, z)` at which an identity fails.
pub type BasisTriple = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<(DialgebraAxiom, Option<BasisTriple>)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, w)| w.is_none())
    }

    pub fn first_failure(&self) -> Option<AxiomFailure> {
        self.results
            .iter()
            .find_map(|(a, w)| w.map(|triple| AxiomFailure { axiom: *a, triple }))
    }
}

/// Evaluates the five identities of a pair of products on all basis triples.
pub fn check_axiom_tensors(left: &StructureTensor, right: &StructureTensor) -> AxiomReport {
    let d = left.dim();
    let pick = |op: Op| match op {
        Op::L => left,
        Op::R => right,
    };
    let results = DialgebraAxiom::ALL
        .iter()
        .map(|&axiom| {
            let (il, ol, ir, or, rhs_left) = axiom.shape();
            let mut witness = None;
            'search: for i in 0..d {
                for j in 0..d {
                    let lhs_inner = pick(il).basis_product(i, j).to_vec();
                    for k in 0..d {
                        let mut ek = vec![Rational::zero(); d];
                        ek[k] = num_traits::One::one();
                        let lhs = pick(ol).apply(&lhs_inner, &ek);
                        let rhs = if rhs_left {
                            pick(or).apply(pick(ir).basis_product(i, j), &ek)
                        } else {
                            let mut ei = vec![Rational::zero(); d];
                            ei[i] = num_traits::One::one();
                            pick(or).apply(&ei, pick(ir).basis_product(j, k))
                        };
                        if lhs != rhs {
                            witness = Some((i, j, k));
                            break 'search;
                        }
                    }
                }
            }
            (axiom, witness)
        })
        .collect();
    AxiomReport { results }
}

/// A dialgebra `(D, ⊣, ⊢)` with `D = ℚ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dialgebra {
    left: StructureTensor,
    right: StructureTensor,
}

impl Dialgebra {
    /// Validates the axioms.
    pub fn new(left: StructureTensor, right: StructureTensor) -> Result<Self> {
        let d = Self::new_unchecked(left, right)?;
        if let Some(f) = check_axioms(&d).first_failure() {
            return Err(Error::AxiomFailure(format!(
                "{} fails at basis triple {:?}",
                f.axiom.equation(),
                f.triple
            )));
        }
        Ok(d)
    }

    /// Only checks shapes; use [`check_axioms`] for validity.
    pub fn new_unchecked(left: StructureTensor, right: StructureTensor) -> Result<Self> {
        if left.dim() != right.dim() || left.dim() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "product tensors have dimensions {} and {}",
                left.dim(),
                right.dim()
            )));
        }
        Ok(Dialgebra { left, right })
    }

    pub fn zero(dim: usize) -> Self {
        Dialgebra {
            left: StructureTensor::zeros(dim),
            right: StructureTensor::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn left(&self) -> &StructureTensor {
        &self.left
    }

    pub fn right(&self) -> &StructureTensor {
        &self.right
    }

    pub fn product(&self, o: crate::trees::LeafOrientation) -> &StructureTensor {
        match o {
            crate::trees::LeafOrientation::Left => &self.left,
            crate::trees::LeafOrientation::Right => &self.right,
        }
    }

    /// Whether `f` (a `dim × dim` matrix acting on coordinate columns)
    /// preserves both products on all basis pairs.
    pub fn is_morphism(&self, target: &Dialgebra, f: &Matrix) -> bool {
        let (d, t) = (self.dim(), target.dim());
        if f.rows() != t || f.cols() != d {
            return false;
        }
        let col = |j: usize| (0..t).map(|r| f.get(r, j).clone()).collect::<Vec<_>>();
        for i in 0..d {
            for j in 0..d {
                for (src, dst) in [(&self.left, &target.left), (&self.right, &target.right)] {
                    let lhs = f.mul_vec(src.basis_product(i, j)).expect("shape checked");
                    let rhs = dst.apply(&col(i), &col(j));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn check_axioms(d: &Dialgebra) -> AxiomReport {
    check_axiom_tensors(&d.left, &d.right)
}

/// First basis triple where `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
pub fn associativity_witness(mult: &StructureTensor) -> Option<(usize, usize, usize)> {
    check_axiom_tensors(mult, mult).results[0].1
}

/// The dialgebra `x⊣y = x⊢y = xy` of an associative algebra.
pub fn from_associative(mult: &StructureTensor) -> Result<Dialgebra> {
    if let Some(w) = associativity_witness(mult) {
        return Err(Error::NotAssociative(w));
    }
    Dialgebra::new(mult.clone(), mult.clone())
}

/// `x⊣y = x·d(y)`, `x⊢y = d(x)·y` for an associative algebra with a
/// square-zero derivation `d` (a matrix acting on coordinate columns).
pub fn from_differential(mult: &StructureTensor, diff: &Matrix) -> Result<Dialgebra> {
    let n = mult.dim();
    if diff.rows() != n || diff.cols() != n {
        return Err(Error::ShapeMismatch(format!("differential must be {n}x{n}")));
    }
    if let Some(w) = associativity_witness(mult) {
        return Err(Error::NotAssociative(w));
    }
    let col = |j: usize| (0..n).map(|r| diff.get(r, j).clone()).collect::<Vec<_>>();
    let basis = |i: usize| {
        let mut e = vec![Rational::zero(); n];
        e[i] = num_traits::One::one();
        e
    };
    for i in 0..n {
        for j in 0..n {
            let lhs = diff.mul_vec(mult.basis_product(i, j))?;
            let a = mult.apply(&col(i), &basis(j));
            let b = mult.apply(&basis(i), &col(j));
            let rhs: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return Err(Error::NotDerivation((i, j)));
            }
        }
    }
    let sq = diff.mul(diff)?;
    if let Some(j) = (0..n).find(|&j| (0..n).any(|r| !sq.get(r, j).is_zero())) {
        return Err(Error::NotSquareZero(j));
    }
    let left = mult.compose(&Matrix::identity(n), &Matrix::identity(n), diff);
    let right = mult.compose(&Matrix::identity(n), diff, &Matrix::identity(n));
    Dialgebra::new(left, right)
}

/// An `A`-bimodule `M`: `left[a][m][k]` is the coefficient of `m_k` in `a_a·m_m`,
/// `right[m][a][k]` the coefficient of `m_k` in `m_m·a_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleActions {
    pub algebra_dim: usize,
    pub module_dim: usize,
    pub left: Vec<Rational>,
    pub right: Vec<Rational>,
}

impl BimoduleActions {
    pub fn new(algebra_dim: usize, module_dim: usize) -> Self {
        let len = algebra_dim * module_dim * module_dim;
        BimoduleActions {
            algebra_dim,
            module_dim,
            left: vec![Rational::zero(); len],
            right: vec![Rational::zero(); len],
        }
    }

    fn lidx(&self, a: usize, m: usize, k: usize) -> usize {
        (a * self.module_dim + m) * self.module_dim + k
    }

    fn ridx(&self, m: usize, a: usize, k: usize) -> usize {
        (m * self.algebra_dim + a) * self.module_dim + k
    }

    pub fn set_left(&mut self, a: usize, m: usize, k: usize, v: Rational) {
        let i = self.lidx(a, m, k);
        self.left[i] = v;
    }

    pub fn set_right(&mut self, m: usize, a: usize, k: usize, v: Rational) {
        let i = self.ridx(m, a, k);
        self.right[i] = v;
    }

    /// `a · m` for vectors.
    pub fn act_left(&self, a: &[Rational], m: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.module_dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, mj) in m.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.left[self.lidx(i, j, k)];
                    if !c.is_zero() {
                        *o += ai * mj * c;
                    }
                }
            }
        }
        out
    }

    /// `m · a` for vectors.
    pub fn act_right(&self, m: &[Rational], a: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.module_dim];
        for (i, mi) in m.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, aj) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.right[self.ridx(i, j, k)];
                    if !c.is_zero() {
                        *o += mi * aj * c;
                    }
                }
            }
        }
        out
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[i] = num_traits::One::one();
    e
}

/// Dialgebra on `M` with `x⊣y = x·f(y)` and `x⊢y = f(x)·y`, where
/// `f: M → A` (an `algebra_dim × module_dim` matrix) is a bimodule map.
pub fn from_bimodule_map(a_mult: &StructureTensor, m: &BimoduleActions, f: &Matrix) -> Result<Dialgebra> {
    let (da, dm) = (a_mult.dim(), m.module_dim);
    if m.algebra_dim != da || f.rows() != da || f.cols() != dm {
        return Err(Error::ShapeMismatch("bimodule map shapes disagree".into()));
    }
    if let Some(w) = associativity_witness(a_mult) {
        return Err(Error::NotAssociative(w));
    }
    for a in 0..da {
        for b in 0..da {
            let ab = a_mult.basis_product(a, b);
            for x in 0..dm {
                let ex = unit(dm, x);
                let (ea, eb) = (unit(da, a), unit(da, b));
                if m.act_left(ab, &ex) != m.act_left(&ea, &m.act_left(&eb, &ex)) {
                    return Err(Error::NotBimodule(format!("(a_{a} a_{b}) m_{x} ≠ a_{a} (a_{b} m_{x})")));
                }
                if m.act_right(&ex, ab) != m.act_right(&m.act_right(&ex, &ea), &eb) {
                    return Err(Error::NotBimodule(format!("m_{x} (a_{a} a_{b}) ≠ (m_{x} a_{a}) a_{b}")));
                }
                if m.act_right(&m.act_left(&ea, &ex), &eb) != m.act_left(&ea, &m.act_right(&ex, &eb)) {
                    return Err(Error::NotBimodule(format!("(a_{a} m_{x}) a_{b} ≠ a_{a} (m_{x} a_{b})")));
                }
            }
        }
    }
    let fcol = |x: usize| (0..da).map(|r| f.get(r, x).clone()).collect::<Vec<_>>();
    for a in 0..da {
        let ea = unit(da, a);
        for x in 0..dm {
            let ex = unit(dm, x);
            if f.mul_vec(&m.act_left(&ea, &ex))? != a_mult.apply(&ea, &fcol(x)) {
                return Err(Error::NotBimodule(format!("f(a_{a} m_{x}) ≠ a_{a} f(m_{x})")));
            }
            if f.mul_vec(&m.act_right(&ex, &ea))? != a_mult.apply(&fcol(x), &ea) {
                return Err(Error::NotBimodule(format!("f(m_{x} a_{a}) ≠ f(m_{x}) a_{a}")));
            }
        }
    }
    let left = StructureTensor::from_fn(dm, |x, y, k| m.act_right(&unit(dm, x), &fcol(y))[k].clone());
    let right = StructureTensor::from_fn(dm, |x, y, k| m.act_left(&fcol(x), &unit(dm, y))[k].clone());
    Dialgebra::new(left, right)
}

/// Structure constants from integer triples `(i, j, k, coefficient)`.
pub fn tensor_from_entries(dim: usize, entries: &[(usize, usize, usize, i64)]) -> StructureTensor {
    let mut t = StructureTensor::zeros(dim);
    for &(i, j, k, c) in entries {
        t.set(i, j, k, crate::linalg::rat(c));
    }
    t
}

/// Named small examples used throughout tests and fixtures.
pub mod examples {
    use super::*;

    /// `ℚ` with its own product.
    pub fn field() -> StructureTensor {
        tensor_from_entries(1, &[(0, 0, 0, 1)])
    }

    /// `ℚ[u]/(u²)` on the basis `(1, u)`.
    pub fn dual_numbers() -> StructureTensor {
        tensor_from_entries(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
    }

    /// `ℚ[x, y]/(x², xy, y²)` on the basis `(1, x, y)`.
    pub fn square_zero_plane() -> StructureTensor {
        tensor_from_entries(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1)])
    }

    /// Two-dimensional dialgebra `x⊣y = φ(y)x`, `x⊢y = φ(x)y` with `φ = e_0^*`.
    pub fn functional_dialgebra() -> Dialgebra {
        let left = StructureTensor::from_fn(2, |i, j, k| crate::linalg::rat((j == 0 && k == i) as i64));
        let right = StructureTensor::from_fn(2, |i, j, k| crate::linalg::rat((i == 0 && k == j) as i64));
        Dialgebra::new(left, right).expect("functional dialgebra satisfies the axioms")
    }
}
