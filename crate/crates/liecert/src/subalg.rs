//! Centralizers, centres of subalgebras, and ad-h weight gradings.

use crate::liealg::{Element, LieAlgebra};
use crate::ratmat::{kernel_basis, QMatrix, Rat, Subspace};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SubalgError {
    #[error("input is not a subalgebra: [s,s] is not contained in s")]
    NotASubalgebra,
    #[error("subspace is not stable under ad h")]
    NotAdHStable,
    #[error("h is not in the Cartan span or has non-integer eigenvalues")]
    BadCartanElement,
}

/// Centralizer `{x : [e, x] = 0}`, the kernel of `ad e`.
pub fn centralizer(l: &LieAlgebra, e: &Element) -> Subspace {
    l.ad_kernel(e)
}

/// Centre `{z in s : [z, s] = 0}` of a subalgebra `s`.
///
/// Closure of `s` under the bracket is verified first; the centre is then
/// the kernel of the stacked maps `z -> [z, s_j]` over the basis rows of `s`.
pub fn lie_centre(l: &LieAlgebra, s: &Subspace) -> Result<Subspace, SubalgError> {
    let dim = l.dim();
    let ds = s.dim();
    let rows: Vec<Element> = (0..ds)
        .map(|r| Element::from_dense(s.basis().row(r)))
        .collect();

    // Brackets of all basis pairs; also the closure check.
    let mut brackets = vec![vec![Element::zero(); ds]; ds];
    for k in 0..ds {
        for j in 0..ds {
            if k == j {
                continue;
            }
            let b = l.bracket(&rows[k], &rows[j]);
            if !b.is_zero() && !s.contains_vec(&b.to_dense(dim)) {
                return Err(SubalgError::NotASubalgebra);
            }
            brackets[k][j] = b;
        }
    }

    // Unknown coefficient vector c with sum_k c_k [s_k, s_j] = 0 for all j.
    let mut constraint = QMatrix::zeros(ds * dim, ds);
    for j in 0..ds {
        for (k, row) in brackets.iter().enumerate() {
            for (idx, c) in row[j].terms() {
                *constraint.at_mut(j * dim + idx, k) = c.clone();
            }
        }
    }
    let coeff_kernel = kernel_basis(&constraint);
    let mut out_rows: Vec<Vec<Rat>> = Vec::new();
    for r in 0..coeff_kernel.dim() {
        let c = coeff_kernel.basis().row(r);
        let mut v = vec![Rat::zero(); dim];
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (idx, coeff) in rows[k].terms() {
                v[idx] += ck * coeff;
            }
        }
        out_rows.push(v);
    }
    if out_rows.is_empty() {
        return Ok(Subspace::zero(dim));
    }
    Ok(Subspace::from_rows(dim, QMatrix::from_rows(out_rows)))
}

/// An ad-h graded subspace: ordered weight pieces, each a matrix of basis
/// rows that are ad-h eigenvectors for that weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    ambient_dim: usize,
    pieces: BTreeMap<i64, QMatrix>,
}

impl GradedSubspace {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Weights in strictly increasing order.
    pub fn weights(&self) -> Vec<i64> {
        self.pieces.keys().copied().collect()
    }

    pub fn piece(&self, weight: i64) -> Option<&QMatrix> {
        self.pieces.get(&weight)
    }

    pub fn piece_dim(&self, weight: i64) -> usize {
        self.pieces.get(&weight).map_or(0, QMatrix::rows)
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().map(QMatrix::rows).sum()
    }

    /// Weight multiset: each weight repeated by its piece dimension.
    pub fn weight_multiset(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (&w, m) in &self.pieces {
            out.extend(std::iter::repeat_n(w, m.rows()));
        }
        out
    }

    /// Piece as a subspace of the ambient space.
    pub fn piece_subspace(&self, weight: i64) -> Subspace {
        match self.pieces.get(&weight) {
            Some(m) => Subspace::from_rows(self.ambient_dim, m.clone()),
            None => Subspace::zero(self.ambient_dim),
        }
    }
}

/// Decompose an ad-h stable subspace into ad-h eigenspaces.
///
/// `ad h` is diagonal on the Chevalley basis with the integer spectrum of
/// root values, so each piece is the set of vectors of `s` supported on the
/// basis indices of one weight; no characteristic polynomial is needed.
pub fn grade_by_h(
    l: &LieAlgebra,
    h: &Element,
    s: &Subspace,
) -> Result<GradedSubspace, SubalgError> {
    let weights = l.ad_h_weights(h).ok_or(SubalgError::BadCartanElement)?;
    let dim = l.dim();
    let ds = s.dim();
    // Candidate weights: values realized on the support of s.
    let mut support_weights: Vec<i64> = Vec::new();
    for r in 0..ds {
        for idx in 0..dim {
            if !s.basis().at(r, idx).is_zero() && !support_weights.contains(&weights[idx]) {
                support_weights.push(weights[idx]);
            }
        }
    }
    support_weights.sort_unstable();

    let mut pieces = BTreeMap::new();
    let mut total = 0usize;
    for &m in &support_weights {
        // Coefficient vectors c with (c . basis) vanishing off weight m.
        let off_indices: Vec<usize> = (0..dim).filter(|&i| weights[i] != m).collect();
        let mut constraint = QMatrix::zeros(off_indices.len(), ds);
        for (r, &idx) in off_indices.iter().enumerate() {
            for k in 0..ds {
                *constraint.at_mut(r, k) = s.basis().at(k, idx).clone();
            }
        }
        let coeff_kernel = kernel_basis(&constraint);
        if coeff_kernel.dim() == 0 {
            continue;
        }
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for r in 0..coeff_kernel.dim() {
            let c = coeff_kernel.basis().row(r);
            let mut v = vec![Rat::zero(); dim];
            for (k, ck) in c.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                for idx in 0..dim {
                    let b = s.basis().at(k, idx);
                    if !b.is_zero() {
                        v[idx] += ck * b;
                    }
                }
            }
            rows.push(v);
        }
        let piece = Subspace::from_rows(dim, QMatrix::from_rows(rows));
        total += piece.dim();
        pieces.insert(m, piece.basis().clone());
    }
    if total != ds {
        return Err(SubalgError::NotAdHStable);
    }
    Ok(GradedSubspace {
        ambient_dim: dim,
        pieces,
    })
}
