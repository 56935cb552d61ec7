//! Resource caps and engine options.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent `σ(n)` of the sign applied when an orientation-reversing
/// element acts on an `n`-cochain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignExponent {
    /// `(n−1)(n−2)/2`, the exponent in the definition of the action.
    #[default]
    Definition,
    /// `n(n−1)/2`, the exponent appearing in the equivariance argument.
    Alternative,
}

impl SignExponent {
    pub fn exponent(self, n: usize) -> usize {
        match self {
            // (n−1)(n−2)/2 is 1 at n = 0
            SignExponent::Definition if n == 0 => 1,
            SignExponent::Definition => (n - 1) * (n.saturating_sub(2)) / 2,
            SignExponent::Alternative => n * n.saturating_sub(1) / 2,
        }
    }

    pub fn sign(self, n: usize) -> i64 {
        if self.exponent(n).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub max_tree_level: usize,
    pub max_total_degree: usize,
    pub max_group_order: usize,
    pub max_dim: usize,
    /// Largest cochain space (number of coordinates) that will be assembled.
    pub max_space_dim: usize,
    pub sign_exponent: SignExponent,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_tree_level: 6,
            max_total_degree: 3,
            max_group_order: 24,
            max_dim: 4,
            max_space_dim: 200_000,
            sign_exponent: SignExponent::Definition,
        }
    }
}

impl EngineConfig {
    pub fn check_tree_level(&self, n: usize) -> Result<()> {
        if n > self.max_tree_level {
            return Err(Error::Resource(format!(
                "tree level {n} exceeds the configured maximum {}",
                self.max_tree_level
            )));
        }
        Ok(())
    }

    pub fn check_total_degree(&self, n: usize) -> Result<()> {
        if n > self.max_total_degree {
            return Err(Error::Resource(format!(
                "total degree {n} exceeds the configured maximum {}",
                self.max_total_degree
            )));
        }
        Ok(())
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        if d > self.max_dim {
            return Err(Error::Resource(format!("dimension {d} exceeds the configured maximum {}", self.max_dim)));
        }
        Ok(())
    }

    pub fn check_group_order(&self, g: usize) -> Result<()> {
        if g > self.max_group_order {
            return Err(Error::Resource(format!(
                "group order {g} exceeds the configured maximum {}",
                self.max_group_order
            )));
        }
        Ok(())
    }

    pub fn check_space(&self, size: usize) -> Result<()> {
        if size > self.max_space_dim {
            return Err(Error::Resource(format!(
                "cochain space of dimension {size} exceeds the configured maximum {}",
                self.max_space_dim
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents() {
        let def: Vec<usize> = (0..6).map(|n| SignExponent::Definition.exponent(n)).collect();
        assert_eq!(def, vec![1, 0, 0, 1, 3, 6]);
        let alt: Vec<usize> = (0..6).map(|n| SignExponent::Alternative.exponent(n)).collect();
        assert_eq!(alt, vec![0, 0, 1, 3, 6, 10]);
    }
}
