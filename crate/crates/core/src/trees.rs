//! Planar binary trees.
//!
//! A tree of `Y_n` has `n` internal (trivalent) vertices and `n + 1` leaves,
//! numbered `0..=n` from left to right. The bracket word `[j_1 … j_n]` lists,
//! for each internal vertex in left-to-right order, the number of internal
//! vertices of the subtree it roots. Grafting `a ∨ b` with `a ∈ Y_p`,
//! `b ∈ Y_q` therefore has word `word(a) ++ [p+q+1] ++ word(b)`, e.g.
//! `Y_3 = {[1 2 3], [1 3 1], [2 1 3], [3 1 2], [3 2 1]}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest level `enumerate_trees` will build.
pub const MAX_ENUMERATION_LEVEL: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Graft(Box<Tree>, Box<Tree>),
}

/// The product attached to a leaf: `Left` is `⊣`, `Right` is `⊢`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeafOrientation {
    Left,
    Right,
}

impl LeafOrientation {
    pub fn symbol(self) -> &'static str {
        match self {
            LeafOrientation::Left => "⊣",
            LeafOrientation::Right => "⊢",
        }
    }
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree::Leaf
    }

    /// Number of internal vertices.
    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Graft(a, b) => a.size() + b.size() + 1,
        }
    }

    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.size());
        self.push_word(&mut w);
        w
    }

    fn push_word(&self, out: &mut Vec<usize>) {
        if let Tree::Graft(a, b) = self {
            a.push_word(out);
            out.push(self.size());
            b.push_word(out);
        }
    }

    /// Inverse of [`Tree::word`]. Accepts `[]` or `[0]` for the 0-tree.
    pub fn from_word(word: &[usize]) -> Result<Tree> {
        if word == [0] {
            return Ok(Tree::Leaf);
        }
        Self::parse_word(word).ok_or_else(|| Error::Parse(format!("{word:?} is not a planar binary tree word")))
    }

    fn parse_word(word: &[usize]) -> Option<Tree> {
        if word.is_empty() {
            return Some(Tree::Leaf);
        }
        let n = word.len();
        let mut roots = word.iter().enumerate().filter(|(_, &j)| j == n);
        let (pos, _) = roots.next()?;
        if roots.next().is_some() {
            return None;
        }
        let left = Self::parse_word(&word[..pos])?;
        let right = Self::parse_word(&word[pos + 1..])?;
        Some(graft(left, right))
    }

    pub fn left(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Graft(a, _) => Some(a),
        }
    }

    pub fn right(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Graft(_, b) => Some(b),
        }
    }

    /// Left-right mirror image.
    pub fn mirror(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Graft(a, b) => graft(b.mirror(), a.mirror()),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return write!(f, "[0]");
        }
        let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on words.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word().cmp(&other.word())
    }
}

impl Serialize for Tree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let w = self.word();
        if w.is_empty() { vec![0] } else { w }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Vec::<usize>::deserialize(d)?;
        Tree::from_word(&w).map_err(serde::de::Error::custom)
    }
}

pub fn graft(a: Tree, b: Tree) -> Tree {
    Tree::Graft(Box::new(a), Box::new(b))
}

/// All trees of `Y_n` in ascending word order.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if n > MAX_ENUMERATION_LEVEL {
        return Err(Error::Resource(format!(
            "tree level {n} exceeds the enumeration limit {MAX_ENUMERATION_LEVEL}"
        )));
    }
    let mut levels: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for m in 1..=n {
        let mut level = Vec::new();
        for p in 0..m {
            let q = m - 1 - p;
            for a in &levels[p] {
                for b in &levels[q] {
                    level.push(graft(a.clone(), b.clone()));
                }
            }
        }
        level.sort();
        levels.push(level);
    }
    Ok(levels.swap_remove(n))
}

pub fn catalan(n: usize) -> u64 {
    // c_{k+1} = c_k * 2(2k+1) / (k+2)
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// `d_i`: removes leaf `i` together with its parent vertex.
pub fn face(i: usize, y: &Tree) -> Result<Tree> {
    let n = y.size();
    if n == 0 {
        return Err(Error::LeafHasNoFaces);
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(face_unchecked(i, y))
}

fn face_unchecked(i: usize, y: &Tree) -> Tree {
    let Tree::Graft(a, b) = y else {
        unreachable!("face of a leaf")
    };
    let p = a.size();
    if i <= p {
        match **a {
            Tree::Leaf => (**b).clone(),
            _ => graft(face_unchecked(i, a), (**b).clone()),
        }
    } else {
        match **b {
            Tree::Leaf => (**a).clone(),
            _ => graft((**a).clone(), face_unchecked(i - p - 1, b)),
        }
    }
}

/// `s_i`: replaces leaf `i` by a cherry.
pub fn degeneracy(i: usize, y: &Tree) -> Result<Tree> {
    let n = y.size();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(degeneracy_unchecked(i, y))
}

fn degeneracy_unchecked(i: usize, y: &Tree) -> Tree {
    match y {
        Tree::Leaf => graft(Tree::Leaf, Tree::Leaf),
        Tree::Graft(a, b) => {
            let p = a.size();
            if i <= p {
                graft(degeneracy_unchecked(i, a), (**b).clone())
            } else {
                graft((**a).clone(), degeneracy_unchecked(i - p - 1, b))
            }
        }
    }
}

/// `o^y_i` for `y ∈ Y_m`, `0 <= i <= m`.
///
/// Interior leaves follow the word: `⊣` iff `j_i > j_{i+1}`. Leaf 0 is `⊣`
/// iff it hangs directly off the root (`y = [0] ∨ y₁`); leaf `m` is `⊢` iff it
/// hangs directly off the root (`y = y₁ ∨ [0]`).
pub fn leaf_orientation(i: usize, y: &Tree) -> Result<LeafOrientation> {
    let m = y.size();
    if m == 0 {
        return Err(Error::LeafHasNoFaces);
    }
    if i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    use LeafOrientation::*;
    let o = if i == 0 {
        if y.left() == Some(&Tree::Leaf) { Left } else { Right }
    } else if i == m {
        if y.right() == Some(&Tree::Leaf) { Right } else { Left }
    } else {
        let w = y.word();
        if w[i - 1] > w[i] { Left } else { Right }
    };
    Ok(o)
}

/// Precomputed index tables for one level: the trees of `Y_n` in canonical
/// order, and for each tree its faces (as indices into level `n - 1`) and leaf
/// orientations.
#[derive(Clone, Debug)]
pub struct TreeLevel {
    pub trees: Vec<Tree>,
    pub faces: Vec<Vec<usize>>,
    pub orientations: Vec<Vec<LeafOrientation>>,
}

impl TreeLevel {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.trees.binary_search(t).ok()
    }
}

/// Tree tables for levels `0..=max_level`.
#[derive(Clone, Debug)]
pub struct TreeCatalog {
    levels: Vec<TreeLevel>,
}

impl TreeCatalog {
    pub fn new(max_level: usize) -> Result<Self> {
        let mut levels: Vec<TreeLevel> = Vec::with_capacity(max_level + 1);
        for n in 0..=max_level {
            let trees = enumerate_trees(n)?;
            let (faces, orientations) = if n == 0 {
                (vec![Vec::new()], vec![Vec::new()])
            } else {
                let below = &levels[n - 1];
                let mut faces = Vec::with_capacity(trees.len());
                let mut orients = Vec::with_capacity(trees.len());
                for y in &trees {
                    let mut f = Vec::with_capacity(n + 1);
                    let mut o = Vec::with_capacity(n + 1);
                    for i in 0..=n {
                        let d = face_unchecked(i, y);
                        f.push(below.index_of(&d).expect("face lies in the level below"));
                        o.push(leaf_orientation(i, y)?);
                    }
                    faces.push(f);
                    orients.push(o);
                }
                (faces, orients)
            };
            levels.push(TreeLevel { trees, faces, orientations });
        }
        Ok(TreeCatalog { levels })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &TreeLevel {
        &self.levels[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(w: &[usize]) -> Tree {
        Tree::from_word(w).unwrap()
    }

    fn words(n: usize) -> Vec<Vec<usize>> {
        enumerate_trees(n).unwrap().iter().map(Tree::word).collect()
    }

    #[test]
    fn low_levels() {
        assert_eq!(enumerate_trees(0).unwrap(), vec![Tree::Leaf]);
        assert_eq!(Tree::Leaf.to_string(), "[0]");
        assert_eq!(words(1), vec![vec![1]]);
        assert_eq!(words(2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(
            words(3),
            vec![vec![1, 2, 3], vec![1, 3, 1], vec![2, 1, 3], vec![3, 1, 2], vec![3, 2, 1]]
        );
    }

    #[test]
    fn catalan_counts() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
            assert_eq!(enumerate_trees(n).unwrap().len() as u64, c);
        }
        // closed form (2n)!/(n!(n+1)!)
        let fact = |k: u64| (1..=k).product::<u64>();
        for n in 0..=8u64 {
            assert_eq!(catalan(n as usize), fact(2 * n) / (fact(n) * fact(n + 1)));
        }
        assert!(matches!(enumerate_trees(13), Err(Error::Resource(_))));
    }

    #[test]
    fn grafting_words() {
        assert_eq!(graft(Tree::Leaf, Tree::Leaf).word(), vec![1]);
        assert_eq!(graft(Tree::Leaf, t(&[1])).word(), vec![2, 1]);
        assert_eq!(graft(t(&[1]), Tree::Leaf).word(), vec![1, 2]);
        assert_eq!(graft(t(&[1]), t(&[1])).word(), vec![1, 3, 1]);
    }

    #[test]
    fn word_roundtrip_and_rejects() {
        for n in 0..=6 {
            for y in enumerate_trees(n).unwrap() {
                assert_eq!(Tree::from_word(&y.word()).unwrap(), y);
            }
        }
        assert!(Tree::from_word(&[1, 1]).is_err());
        assert!(Tree::from_word(&[2, 3]).is_err());
        assert!(Tree::from_word(&[1, 3, 2]).is_err());
        assert_eq!(serde_json::to_string(&t(&[2, 1])).unwrap(), "[2,1]");
        assert_eq!(serde_json::from_str::<Tree>("[0]").unwrap(), Tree::Leaf);
    }

    #[test]
    fn grafting_partitions_levels() {
        for n in 1..=6 {
            let mut all = Vec::new();
            for p in 0..n {
                for a in enumerate_trees(p).unwrap() {
                    for b in enumerate_trees(n - 1 - p).unwrap() {
                        all.push(graft(a.clone(), b));
                    }
                }
            }
            let total = all.len();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), total, "grafting produced duplicates at level {n}");
            assert_eq!(all, enumerate_trees(n).unwrap());
        }
    }

    #[test]
    fn face_examples() {
        for i in 0..=1 {
            assert_eq!(face(i, &t(&[1])).unwrap(), Tree::Leaf);
        }
        assert_eq!(face(1, &t(&[2, 1])).unwrap(), t(&[1]));
        assert!(matches!(face(0, &Tree::Leaf), Err(Error::LeafHasNoFaces)));
        assert!(matches!(face(3, &t(&[2, 1])), Err(Error::IndexOutOfRange { .. })));
        // [3 1 2] = [0] ∨ [1 2]
        let y = t(&[3, 1, 2]);
        let f: Vec<Tree> = (0..=3).map(|i| face(i, &y).unwrap()).collect();
        assert_eq!(f, vec![t(&[1, 2]), t(&[2, 1]), t(&[2, 1]), t(&[2, 1])]);
    }

    #[test]
    fn face_face_identity() {
        for n in 2..=5 {
            for y in enumerate_trees(n).unwrap() {
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = face(i, &face(j, &y).unwrap()).unwrap();
                        let rhs = face(j - 1, &face(i, &y).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "d_{i} d_{j} on {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn degeneracy_identities() {
        assert_eq!(degeneracy(0, &Tree::Leaf).unwrap(), t(&[1]));
        assert!(matches!(degeneracy(2, &t(&[1])), Err(Error::IndexOutOfRange { .. })));
        for n in 0..=4 {
            for y in enumerate_trees(n).unwrap() {
                for i in 0..=n {
                    let s = degeneracy(i, &y).unwrap();
                    assert_eq!(face(i, &s).unwrap(), y);
                    assert_eq!(face(i + 1, &s).unwrap(), y);
                    for j in 0..=n + 1 {
                        // d_j s_i = s_i d_{j-1} for j > i+1, s_{i-1} d_j for j < i
                        if n >= 1 && j > i + 1 {
                            let lhs = face(j, &s).unwrap();
                            let rhs = degeneracy(i, &face(j - 1, &y).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                        if n >= 1 && j < i {
                            let lhs = face(j, &s).unwrap();
                            let rhs = degeneracy(i - 1, &face(j, &y).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degeneracy_square_identity_fails() {
        let witnessed = enumerate_trees(2).unwrap().iter().any(|y| {
            (0..=2).any(|i| {
                let ss = degeneracy(i, &degeneracy(i, y).unwrap()).unwrap();
                let ss1 = degeneracy(i + 1, &degeneracy(i, y).unwrap()).unwrap();
                ss != ss1
            })
        });
        assert!(witnessed);
    }

    #[test]
    fn orientation_examples() {
        use LeafOrientation::*;
        assert_eq!(leaf_orientation(1, &t(&[2, 1])).unwrap(), Left);
        // [2 1] = [0] ∨ [1]; [1 2] = [1] ∨ [0]
        assert_eq!(leaf_orientation(0, &t(&[2, 1])).unwrap(), Left);
        assert_eq!(leaf_orientation(2, &t(&[2, 1])).unwrap(), Left);
        assert_eq!(leaf_orientation(0, &t(&[1, 2])).unwrap(), Right);
        assert_eq!(leaf_orientation(2, &t(&[1, 2])).unwrap(), Right);
        assert_eq!(leaf_orientation(0, &t(&[1])).unwrap(), Left);
        assert_eq!(leaf_orientation(1, &t(&[1])).unwrap(), Right);
        assert!(leaf_orientation(0, &Tree::Leaf).is_err());
        assert!(leaf_orientation(4, &t(&[1, 3, 1])).is_err());
    }

    #[test]
    fn mirror_reverses_faces() {
        for n in 1..=5 {
            for y in enumerate_trees(n).unwrap() {
                let m = y.mirror();
                assert_eq!(m.mirror(), y);
                for i in 0..=n {
                    assert_eq!(face(i, &m).unwrap(), face(n - i, &y).unwrap().mirror());
                }
            }
        }
    }

    #[test]
    fn catalog_tables_match_direct_maps() {
        let cat = TreeCatalog::new(4).unwrap();
        for n in 1..=4 {
            let lvl = cat.level(n);
            for (k, y) in lvl.trees.iter().enumerate() {
                for i in 0..=n {
                    assert_eq!(cat.level(n - 1).trees[lvl.faces[k][i]], face(i, y).unwrap());
                    assert_eq!(lvl.orientations[k][i], leaf_orientation(i, y).unwrap());
                }
            }
        }
    }
}
