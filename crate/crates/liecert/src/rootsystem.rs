//! Root system enumeration for the simple types.
//!
//! Roots are kept as integer coordinate vectors over the simple roots, in
//! Bourbaki node numbering. Positive roots are enumerated inductively from
//! the Cartan matrix and ordered by height, then lexicographically on the
//! coordinate vector; that order is the one every later convention (basis
//! layout, structure-constant signs) hangs off.

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid simple type {0}")]
    InvalidType(String),
    #[error("vector is not a root of the system")]
    NotARoot,
    #[error("root string is undefined for beta = ±alpha")]
    ProportionalRoots,
}

/// Family letter of a simple type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// A simple Lie type such as `E6` or `F4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootSystemError::InvalidType(format!("{}{}", family, rank)))
        }
    }

    /// Parse names like "E6" or "F4".
    pub fn parse(s: &str) -> Result<Self, RootSystemError> {
        let mut chars = s.chars();
        let fam = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootSystemError::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootSystemError::InvalidType(s.to_string()))?;
        SimpleType::new(fam, rank)
    }

    /// Cartan matrix `A[i][j] = <alpha_j, alpha_i^v>` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        fn edge(a: &mut [Vec<i64>], i: usize, j: usize) {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    edge(&mut a, i, i + 1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    edge(&mut a, i, i + 1);
                }
                // alpha_n short: double bond pointing long -> short.
                a[n - 2][n - 1] = -1;
                a[n - 1][n - 2] = -2;
            }
            Family::C => {
                for i in 0..n - 1 {
                    edge(&mut a, i, i + 1);
                }
                // alpha_n long.
                a[n - 2][n - 1] = -2;
                a[n - 1][n - 2] = -1;
            }
            Family::D => {
                for i in 0..n - 3 {
                    edge(&mut a, i, i + 1);
                }
                edge(&mut a, n - 3, n - 2);
                edge(&mut a, n - 3, n - 1);
            }
            Family::E => {
                // Bourbaki: chain 1-3-4-5-...-n with node 2 attached to 4.
                edge(&mut a, 0, 2);
                edge(&mut a, 1, 3);
                for i in 2..n - 1 {
                    edge(&mut a, i, i + 1);
                }
            }
            Family::F => {
                // 1 - 2 => 3 - 4 with alpha_1, alpha_2 long.
                edge(&mut a, 0, 1);
                edge(&mut a, 2, 3);
                a[1][2] = -1;
                a[2][1] = -2;
            }
            Family::G => {
                a[0][1] = -1;
                a[1][0] = -3;
            }
        }
        a
    }

    /// Squared lengths of the simple roots (short roots normalized to 2).
    pub fn simple_norms_sq(&self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![2; n],
            Family::B => {
                let mut v = vec![4; n];
                v[n - 1] = 2;
                v
            }
            Family::C => {
                let mut v = vec![2; n];
                v[n - 1] = 4;
                v
            }
            Family::F => vec![4, 4, 2, 2],
            Family::G => vec![6, 2],
        }
    }
}

/// A root, as integer coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.height() > 0
    }

    fn add(&self, other: &Root) -> Root {
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Enumerated root system with the fixed height-then-lex positive root order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub simple_type: SimpleType,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    /// Squared length of each positive root (short roots have 2).
    norms_sq: Vec<i64>,
    /// Coordinate vector -> index into `positive_roots`.
    index: HashMap<Vec<i64>, usize>,
    /// Gram matrix (alpha_i, alpha_j), integral in this normalization.
    gram: Vec<Vec<i64>>,
}

/// Number of positive roots per the classification, used as a construction check.
fn classification_count(t: SimpleType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

/// Enumerate the root system of a simple type by the inductive string rule:
/// a root `beta` extends by the simple root `alpha_i` exactly when the
/// alpha_i-string through beta has room upward, i.e. `p - <beta, alpha_i^v> > 0`.
pub fn build_root_system(t: SimpleType) -> RootSystem {
    let rank = t.rank;
    let cartan = t.cartan_matrix();
    let norms = t.simple_norms_sq();
    // Gram matrix from A[i][j] = 2 (alpha_j, alpha_i) / (alpha_i, alpha_i).
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let twice = cartan[i][j] * norms[i];
            debug_assert_eq!(twice % 2, 0);
            gram[i][j] = twice / 2;
        }
    }

    let mut roots: Vec<Root> = (0..rank)
        .map(|i| {
            let mut c = vec![0i64; rank];
            c[i] = 1;
            Root { coeffs: c }
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, ()> = roots.iter().map(|r| (r.coeffs.clone(), ())).collect();

    // Process level by level; the downward string only meets lower heights,
    // which are complete by the time a level is scanned.
    let mut level_start = 0;
    loop {
        let level_end = roots.len();
        if level_start == level_end {
            break;
        }
        for b in level_start..level_end {
            for i in 0..rank {
                let beta = roots[b].clone();
                let mut candidate = beta.coeffs.clone();
                candidate[i] += 1;
                if seen.contains_key(&candidate) {
                    continue;
                }
                let mut p = 0i64;
                let mut down = beta.coeffs.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| beta.coeffs[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    seen.insert(candidate.clone(), ());
                    roots.push(Root { coeffs: candidate });
                }
            }
        }
        level_start = level_end;
    }

    roots.sort_by(|a, b| a.height().cmp(&b.height()).then(a.coeffs.cmp(&b.coeffs)));
    assert_eq!(
        roots.len(),
        classification_count(t),
        "positive root count mismatch for {}",
        t
    );
    let index = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coeffs.clone(), i))
        .collect();
    let norms_sq = roots
        .iter()
        .map(|r| norm_sq_from_gram(&gram, &r.coeffs))
        .collect();
    RootSystem {
        simple_type: t,
        cartan,
        positive_roots: roots,
        norms_sq,
        index,
        gram,
    }
}

fn norm_sq_from_gram(gram: &[Vec<i64>], coeffs: &[i64]) -> i64 {
    let mut s = 0i64;
    for (i, &ci) in coeffs.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        for (j, &cj) in coeffs.iter().enumerate() {
            if cj != 0 {
                s += ci * cj * gram[i][j];
            }
        }
    }
    s
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.simple_type.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Dimension of the associated Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        2 * self.num_positive() + self.rank()
    }

    /// Index of a positive root, by coordinates.
    pub fn positive_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// True iff `v` or `-v` is a positive root.
    pub fn is_root(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.rank(), "is_root: wrong coordinate length");
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    /// Signed lookup: `Some((idx, negative))` when `v` is a root.
    pub fn signed_index(&self, v: &[i64]) -> Option<(usize, bool)> {
        if let Some(&i) = self.index.get(v) {
            return Some((i, false));
        }
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&i| (i, true))
    }

    /// Squared length of a root given by coordinates.
    pub fn norm_sq(&self, v: &[i64]) -> i64 {
        norm_sq_from_gram(&self.gram, v)
    }

    /// Squared length of the positive root with index `i`.
    pub fn norm_sq_of(&self, i: usize) -> i64 {
        self.norms_sq[i]
    }

    /// Cartan pairing `<beta, alpha_i^v>` for a simple root index `i`.
    pub fn pairing_with_simple(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.cartan[i][j]).sum()
    }

    /// The alpha-string through beta: `(p, q)` with
    /// `beta - p alpha, ..., beta + q alpha` all roots.
    pub fn root_string(
        &self,
        beta: &Root,
        alpha: &Root,
    ) -> Result<(usize, usize), RootSystemError> {
        if !self.is_root(&alpha.coeffs) || !self.is_root(&beta.coeffs) {
            return Err(RootSystemError::NotARoot);
        }
        if beta.coeffs == alpha.coeffs || beta.coeffs == alpha.neg().coeffs {
            return Err(RootSystemError::ProportionalRoots);
        }
        let mut p = 0usize;
        let mut v = beta.clone();
        loop {
            v = v.add(&alpha.neg());
            if v.coeffs.iter().all(|&c| c == 0) || !self.is_root(&v.coeffs) {
                break;
            }
            p += 1;
        }
        let mut q = 0usize;
        let mut v = beta.clone();
        loop {
            v = v.add(alpha);
            if v.coeffs.iter().all(|&c| c == 0) || !self.is_root(&v.coeffs) {
                break;
            }
            q += 1;
        }
        Ok((p, q))
    }
}
