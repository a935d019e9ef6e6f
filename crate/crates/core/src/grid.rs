//! Integer coefficient grids used to sample Hom and Ext spaces.

use num_traits::{Signed, Zero};

use crate::{q, Rational};

/// Coefficients in `{−radius, …, radius}`; radius 1 is the default `{−1, 0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    pub radius: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { radius: 1 }
    }
}

impl Grid {
    pub fn new(radius: i64) -> Self {
        assert!(radius >= 1, "grid radius must be positive");
        Grid { radius }
    }

    fn values(&self) -> Vec<Rational> {
        // 0, 1, −1, 2, −2, …
        let mut v = vec![q(0)];
        for k in 1..=self.radius {
            v.push(q(k));
            v.push(q(-k));
        }
        v
    }

    /// Number of vectors in `grid^n`, saturating.
    pub fn size(&self, n: usize) -> usize {
        (2 * self.radius as usize + 1).saturating_pow(n as u32)
    }

    /// All vectors of `grid^n`, starting with zero.
    pub fn vectors(&self, n: usize) -> impl Iterator<Item = Vec<Rational>> {
        let values = self.values();
        let base = values.len();
        let total = self.size(n);
        (0..total).map(move |mut k| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(values[k % base].clone());
                k /= base;
            }
            v
        })
    }

    pub fn nonzero(&self, n: usize) -> impl Iterator<Item = Vec<Rational>> {
        self.vectors(n).skip(1)
    }

    /// Nonzero vectors up to sign: the first nonzero entry is positive.
    pub fn up_to_sign(&self, n: usize) -> impl Iterator<Item = Vec<Rational>> {
        self.nonzero(n)
            .filter(|v| v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let g = Grid::default();
        assert_eq!(g.vectors(2).count(), 9);
        assert_eq!(g.nonzero(2).count(), 8);
        assert_eq!(g.up_to_sign(2).count(), 4);
        assert_eq!(Grid::new(2).vectors(1).count(), 5);
        assert_eq!(g.vectors(0).count(), 1);
        assert!(g.vectors(3).next().unwrap().iter().all(|c| c.is_zero()));
    }
}
