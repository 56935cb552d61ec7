//! Pointwise oracle for the coboundary and the action on cochains.
//!
//! Trees are handled as bracket strings such as `(x(xx))`; faces and leaf
//! orientations are computed on those strings, independently of the tree
//! module. Cochains are evaluated on basis inputs through the documented
//! layout `((tree · d^n + J) · d + k)`.

use dicoh_core::cohomology::Engine;
use dicoh_core::config::{EngineConfig, SignExponent};
use dicoh_core::linalg::{rat, Rational};
use dicoh_core::oriented::examples::*;
use dicoh_core::trees::{enumerate_trees, Tree};
use dicoh_core::{OrientedDialgebra, StructureTensor};
use num_traits::Zero;
use proptest::prelude::*;

fn bracket(t: &Tree) -> String {
    match t {
        Tree::Leaf => "x".into(),
        Tree::Graft(a, b) => format!("({}{})", bracket(a), bracket(b)),
    }
}

fn level(n: usize) -> Vec<String> {
    enumerate_trees(n).unwrap().iter().map(bracket).collect()
}

fn leaf_positions(s: &[u8]) -> Vec<usize> {
    s.iter().enumerate().filter(|(_, &c)| c == b'x').map(|(i, _)| i).collect()
}

fn matching_open(s: &[u8], close: usize) -> usize {
    let mut depth = 0i32;
    for i in (0..=close).rev() {
        match s[i] {
            b')' => depth += 1,
            b'(' => {
                depth -= 1;
                if depth == 0 {
                    return i;
                }
            }
            _ => {}
        }
    }
    unreachable!()
}

fn matching_close(s: &[u8], open: usize) -> usize {
    let mut depth = 0i32;
    for (i, &c) in s.iter().enumerate().skip(open) {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return i;
                }
            }
            _ => {}
        }
    }
    unreachable!()
}

/// Deletes leaf `i` and its parent vertex.
fn face(s: &str, i: usize) -> String {
    let b = s.as_bytes();
    let p = leaf_positions(b)[i];
    let remove: [usize; 3] = if b[p - 1] == b'(' {
        [p - 1, p, matching_close(b, p - 1)]
    } else {
        [matching_open(b, p + 1), p, p + 1]
    };
    b.iter()
        .enumerate()
        .filter(|(k, _)| !remove.contains(k))
        .map(|(_, &c)| c as char)
        .collect()
}

/// `true` for `⊣`.
fn orientation_is_left(s: &str, i: usize) -> bool {
    let b = s.as_bytes();
    let leaves = leaf_positions(b);
    let m = leaves.len() - 1;
    let p = leaves[i];
    if i == 0 {
        p == 1
    } else if i == m {
        p != b.len() - 2
    } else {
        // interior leaves: a left child points ⊣
        b[p - 1] == b'('
    }
}

struct Cochains {
    d: usize,
    n: usize,
    trees: Vec<String>,
}

impl Cochains {
    fn new(d: usize, n: usize) -> Self {
        Cochains { d, n, trees: level(n) }
    }

    fn len(&self) -> usize {
        self.trees.len() * self.d.pow(self.n as u32) * self.d
    }

    fn index(&self, tree: &str, inputs: &[usize], k: usize) -> usize {
        let t = self.trees.iter().position(|s| s == tree).expect("tree of this level");
        let j = inputs.iter().fold(0, |acc, &x| acc * self.d + x);
        (t * self.d.pow(self.n as u32) + j) * self.d + k
    }

    /// `f(tree; x_1, …, x_n)` for arbitrary vectors, by multilinearity.
    fn eval(&self, f: &[Rational], tree: &str, xs: &[Vec<Rational>]) -> Vec<Rational> {
        let d = self.d;
        let mut out = vec![Rational::zero(); d];
        for jj in 0..d.pow(self.n as u32) {
            let digits = multi_index(jj, d, self.n);
            let mut coeff = rat(1);
            for (x, &j) in xs.iter().zip(&digits) {
                coeff *= &x[j];
            }
            if coeff.is_zero() {
                continue;
            }
            for k in 0..d {
                out[k] += &coeff * &f[self.index(tree, &digits, k)];
            }
        }
        out
    }
}

fn multi_index(mut jj: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        digits[i] = jj % d;
        jj /= d;
    }
    digits
}

fn basis(d: usize, i: usize) -> Vec<Rational> {
    (0..d).map(|k| rat((k == i) as i64)).collect()
}

fn product(t: &StructureTensor, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let d = t.dim();
    let mut out = vec![Rational::zero(); d];
    for i in 0..d {
        for j in 0..d {
            let c = &x[i] * &y[j];
            if c.is_zero() {
                continue;
            }
            for k in 0..d {
                out[k] += &c * t.get(i, j, k);
            }
        }
    }
    out
}

fn mat_vec(m: &dicoh_core::Matrix, x: &[Rational]) -> Vec<Rational> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c) * &x[c]).sum()).collect()
}

fn oracle_delta(od: &OrientedDialgebra, n: usize, f: &[Rational]) -> Vec<Rational> {
    let d = od.dim();
    let src = Cochains::new(d, n);
    let dst = Cochains::new(d, n + 1);
    let prod = |left: bool| if left { od.dialgebra().left() } else { od.dialgebra().right() };
    let mut out = vec![Rational::zero(); dst.len()];
    for tree in &dst.trees {
        for jj in 0..d.pow(n as u32 + 1) {
            let xs: Vec<Vec<Rational>> = multi_index(jj, d, n + 1).into_iter().map(|j| basis(d, j)).collect();
            let mut acc = vec![Rational::zero(); d];
            let mut add = |v: Vec<Rational>, sign: i64| {
                for k in 0..d {
                    acc[k] += &v[k] * rat(sign);
                }
            };
            let inner = src.eval(f, &face(tree, 0), &xs[1..]);
            add(product(prod(orientation_is_left(tree, 0)), &xs[0], &inner), 1);
            for i in 1..=n {
                let mut args = xs.clone();
                let merged = product(prod(orientation_is_left(tree, i)), &xs[i - 1], &xs[i]);
                args.splice(i - 1..=i, [merged]);
                add(src.eval(f, &face(tree, i), &args), if i % 2 == 0 { 1 } else { -1 });
            }
            let inner = src.eval(f, &face(tree, n + 1), &xs[..n]);
            add(
                product(prod(orientation_is_left(tree, n + 1)), &inner, &xs[n]),
                if (n + 1) % 2 == 0 { 1 } else { -1 },
            );
            let digits = multi_index(jj, d, n + 1);
            for k in 0..d {
                out[dst.index(tree, &digits, k)] = acc[k].clone();
            }
        }
    }
    out
}

fn oracle_action(od: &OrientedDialgebra, sign: SignExponent, g: usize, n: usize, f: &[Rational]) -> Vec<Rational> {
    let d = od.dim();
    let c = Cochains::new(d, n);
    let group = od.group();
    let rho = od.action(g);
    let rho_inv = od.action(group.inv(g));
    let reversed = group.epsilon(g) == -1;
    let s = if reversed { sign.sign(n) } else { 1 };
    let mut out = vec![Rational::zero(); c.len()];
    for tree in &c.trees {
        for jj in 0..d.pow(n as u32) {
            let digits = multi_index(jj, d, n);
            let mut xs: Vec<Vec<Rational>> = digits.iter().map(|&j| mat_vec(rho_inv, &basis(d, j))).collect();
            if reversed {
                xs.reverse();
            }
            let v = mat_vec(rho, &c.eval(f, tree, &xs));
            for k in 0..d {
                out[c.index(tree, &digits, k)] = &v[k] * rat(s);
            }
        }
    }
    out
}

fn fixtures() -> Vec<OrientedDialgebra> {
    vec![
        dual_numbers_sign(),
        dual_numbers_cyclic(),
        functional_cyclic(),
        zero_sign(2),
        square_zero_plane_differential(),
    ]
}

#[test]
fn bracket_faces_match_hand_examples() {
    assert_eq!(face("(x(xx))", 0), "(xx)");
    assert_eq!(face("(x(xx))", 1), "(xx)");
    assert_eq!(face("((xx)x)", 2), "(xx)");
    assert_eq!(face("((xx)(xx))", 2), "((xx)x)");
    assert!(orientation_is_left("(x(xx))", 0));
    assert!(orientation_is_left("(x(xx))", 1));
    assert!(orientation_is_left("(x(xx))", 2));
    assert!(!orientation_is_left("((xx)x)", 0));
    assert!(!orientation_is_left("((xx)x)", 1));
    assert!(!orientation_is_left("((xx)x)", 2));
}

#[test]
fn delta_matches_oracle_on_basis_cochains() {
    for od in fixtures() {
        let engine = Engine::new(od.clone(), EngineConfig::default()).unwrap();
        for n in 0..=2 {
            let delta = engine.delta(n).unwrap();
            let len = Cochains::new(od.dim(), n).len();
            for c in 0..len {
                let f: Vec<Rational> = (0..len).map(|i| rat((i == c) as i64)).collect();
                assert_eq!(delta.mul_vec(&f).unwrap(), oracle_delta(&od, n, &f), "n = {n}, column {c}");
            }
        }
    }
}

#[test]
fn action_matches_oracle_on_basis_cochains() {
    for sign in [SignExponent::Definition, SignExponent::Alternative] {
        let config = EngineConfig {
            sign_exponent: sign,
            ..EngineConfig::default()
        };
        for od in fixtures() {
            let engine = Engine::new(od.clone(), config.clone()).unwrap();
            for g in 0..od.group().order() {
                for n in 0..=2 {
                    let a = engine.action(g, n).unwrap();
                    let len = Cochains::new(od.dim(), n).len();
                    for c in 0..len {
                        let f: Vec<Rational> = (0..len).map(|i| rat((i == c) as i64)).collect();
                        assert_eq!(a.mul_vec(&f).unwrap(), oracle_action(&od, sign, g, n, &f));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn delta_matches_oracle_on_random_cochains(v in proptest::collection::vec(-4i64..5, 16)) {
        let od = functional_cyclic();
        let engine = Engine::new(od.clone(), EngineConfig::default()).unwrap();
        let f: Vec<Rational> = v.into_iter().map(rat).collect();
        prop_assert_eq!(engine.delta(2).unwrap().mul_vec(&f).unwrap(), oracle_delta(&od, 2, &f));
    }

    #[test]
    fn delta_squares_to_zero_pointwise(v in proptest::collection::vec(-4i64..5, 8)) {
        for od in [dual_numbers_sign(), functional_cyclic()] {
            let f: Vec<Rational> = v.iter().copied().map(rat).collect();
            let once = oracle_delta(&od, 1, &f);
            prop_assert!(oracle_delta(&od, 2, &once).iter().all(Zero::is_zero));
        }
    }
}
