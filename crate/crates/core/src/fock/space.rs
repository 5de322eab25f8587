use std::sync::Arc;

use super::factor::FreeFactor;
use crate::error::{QgError, Result};

pub const DEFAULT_DIM_CAP: usize = 200_000;
pub const DIM_CAP_ENV: &str = "QGLAB_DIM_CAP";

/// Budget from `QGLAB_DIM_CAP` if set and parseable, otherwise the default.
pub fn dim_cap_from_env() -> usize {
    std::env::var(DIM_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

const NONE: u32 = u32::MAX;

/// Truncated free-product Fock space: `Omega` plus alternating words
/// `H^0_{i_1} (x) ... (x) H^0_{i_k}` with `k <= max_len`.
///
/// Basis vectors are ordered by word length. A word is stored as its first
/// letter `(factor, k)` and the index of its tail, so prepending is an index
/// lookup.
#[derive(Debug, Clone)]
pub struct FockSpace {
    factors: Vec<Arc<FreeFactor>>,
    max_len: usize,
    len: Vec<u8>,
    first_factor: Vec<u32>,
    first_letter: Vec<u32>,
    tail: Vec<u32>,
    /// `child[t * F + i]` is the index of `(i, 0) w_t`.
    child: Vec<u32>,
    /// `len_start[k]` is the first index of length `k`; one entry past the end.
    len_start: Vec<usize>,
}

impl FockSpace {
    pub fn build(factors: Vec<FreeFactor>, max_len: usize) -> Result<Self> {
        Self::build_with_cap(factors, max_len, dim_cap_from_env())
    }

    pub fn build_with_cap(factors: Vec<FreeFactor>, max_len: usize, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(QgError::Structural("free product needs at least one factor".into()));
        }
        if max_len > u8::MAX as usize {
            return Err(QgError::Structural(format!("word cap {max_len} too large")));
        }
        let dims: Vec<usize> = factors.iter().map(|f| f.centred_dim()).collect();
        let dim = predicted_dim(&dims, max_len);
        if dim > cap as u128 {
            return Err(QgError::Budget {
                dim: dim.min(usize::MAX as u128) as usize,
                cap,
            });
        }
        let dim = dim as usize;
        let nf = factors.len();
        let mut len = Vec::with_capacity(dim);
        let mut first_factor = Vec::with_capacity(dim);
        let mut first_letter = Vec::with_capacity(dim);
        let mut tail = Vec::with_capacity(dim);
        let mut child = vec![NONE; dim * nf];
        let mut len_start = vec![0usize];

        len.push(0);
        first_factor.push(NONE);
        first_letter.push(NONE);
        tail.push(NONE);
        len_start.push(1);
        for k in 1..=max_len {
            let (lo, hi) = (len_start[k - 1], len_start[k]);
            for t in lo..hi {
                for (i, &d) in dims.iter().enumerate() {
                    if first_factor[t] == i as u32 || d == 0 {
                        continue;
                    }
                    child[t * nf + i] = len.len() as u32;
                    for letter in 0..d {
                        len.push(k as u8);
                        first_factor.push(i as u32);
                        first_letter.push(letter as u32);
                        tail.push(t as u32);
                    }
                }
            }
            len_start.push(len.len());
        }
        debug_assert_eq!(len.len(), dim);
        Ok(Self {
            factors: factors.into_iter().map(Arc::new).collect(),
            max_len,
            len,
            first_factor,
            first_letter,
            tail,
            child,
            len_start,
        })
    }

    /// `n` copies of the same factor.
    pub fn copies(factor: &FreeFactor, n: usize, max_len: usize, cap: usize) -> Result<Self> {
        Self::build_with_cap(vec![factor.clone(); n], max_len, cap)
    }

    pub fn dim(&self) -> usize {
        self.len.len()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> Result<&FreeFactor> {
        self.factors
            .get(i)
            .map(|f| f.as_ref())
            .ok_or(QgError::IndexOutOfRange {
                index: i,
                len: self.factors.len(),
            })
    }

    pub fn word_len(&self, t: usize) -> usize {
        self.len[t] as usize
    }

    /// Number of basis vectors of length `<= k`.
    pub fn dim_up_to(&self, k: usize) -> usize {
        self.len_start[(k + 1).min(self.max_len + 1)]
    }

    /// Letters `(factor, index in H^0)` from left to right.
    pub fn word(&self, t: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len[t] as usize);
        let mut t = t;
        while self.first_factor[t] != NONE {
            out.push((self.first_factor[t] as usize, self.first_letter[t] as usize));
            t = self.tail[t] as usize;
        }
        out
    }

    pub fn index_of(&self, word: &[(usize, usize)]) -> Option<usize> {
        let mut t = 0usize;
        for &(i, k) in word.iter().rev() {
            if i >= self.factors.len() || k >= self.factors[i].centred_dim() {
                return None;
            }
            let c = self.child[t * self.factors.len() + i];
            if c == NONE {
                return None;
            }
            t = c as usize + k;
        }
        Some(t)
    }

    pub(crate) fn first_factor_of(&self, t: usize) -> Option<usize> {
        let f = self.first_factor[t];
        (f != NONE).then_some(f as usize)
    }

    /// Index of `(i, 0) w_t`, if that word exists in the truncated space.
    pub(crate) fn child_of(&self, t: usize, i: usize) -> Option<usize> {
        let c = self.child[t * self.factors.len() + i];
        (c != NONE).then_some(c as usize)
    }
}

/// `1 + sum_k` (number of alternating words of length `k` weighted by the
/// centred dimensions), saturating.
pub fn predicted_dim(centred_dims: &[usize], max_len: usize) -> u128 {
    let mut total: u128 = 1;
    let mut layer: Vec<u128> = centred_dims.iter().map(|&d| d as u128).collect();
    for k in 1..=max_len {
        let s: u128 = layer.iter().fold(0u128, |a, &b| a.saturating_add(b));
        total = total.saturating_add(s);
        if k == max_len {
            break;
        }
        layer = centred_dims
            .iter()
            .zip(&layer)
            .map(|(&d, &own)| (d as u128).saturating_mul(s - own))
            .collect();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_pair_dimension() {
        let f = FreeFactor::z2();
        let s = FockSpace::copies(&f, 2, 3, 1000).unwrap();
        assert_eq!(s.dim(), 7);
        assert_eq!(s.word(6), vec![(1, 0), (0, 0), (1, 0)]);
    }

    #[test]
    fn word_index_roundtrip() {
        let s = FockSpace::copies(&FreeFactor::matrix_trace(2), 3, 3, 10_000).unwrap();
        for t in 0..s.dim() {
            assert_eq!(s.index_of(&s.word(t)), Some(t));
        }
        assert_eq!(s.index_of(&[(0, 0), (0, 1)]), None);
    }

    #[test]
    fn budget_enforced() {
        let f = FreeFactor::z2();
        let err = FockSpace::copies(&f, 16, 4, 1000).unwrap_err();
        assert_eq!(err, QgError::Budget { dim: 57857, cap: 1000 });
    }
}
