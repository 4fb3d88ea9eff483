//! Simple Lie algebras on a Chevalley basis.
//!
//! Basis layout for a system with N positive roots and rank r:
//! indices `0..N` are the positive root vectors `x_beta` (in root order),
//! `N..2N` the negative root vectors `y_beta`, and `2N..2N+r` the Cartan
//! generators `h_i`. All structure constants are integers.
//!
//! Signs are fixed by the extraspecial-pair convention over the
//! height-then-lex root order: for each non-simple positive root `gamma` the
//! decomposition `gamma = alpha + beta` with minimal `alpha` gets
//! `N_{alpha,beta} = p + 1 > 0`, and every other constant is propagated from
//! those through the Jacobi identity for root triples/quadruples. Any other
//! consistent sign choice yields an isomorphic algebra, so downstream checks
//! only ever use convention-invariant quantities.

use crate::ratmat::{kernel_basis, QMatrix, Rat, Subspace};
use crate::rootsystem::RootSystem;
use num_rational::Rational64;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{self, Write};

/// Element of a Lie algebra, sparse over the basis.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    coeffs: BTreeMap<usize, Rat>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis_vector(idx: usize) -> Self {
        let mut e = Element::zero();
        e.coeffs.insert(idx, Rat::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut e = Element::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn from_dense(v: &[Rat]) -> Self {
        Element::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone())),
        )
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn add_term(&mut self, idx: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn coeff(&self, idx: usize) -> Rat {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element {
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * s)).collect(),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| format!("({})*b{}", c, i))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Kind of a basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    PosRoot(usize),
    NegRoot(usize),
    Cartan(usize),
}

/// Simple Lie algebra with integer Chevalley structure constants.
///
/// The sparse table stores `[b_i, b_j]` for `i < j` only; the transposed
/// entry is recovered by a sign flip.
pub struct LieAlgebra {
    pub root_system: RootSystem,
    dim: usize,
    num_pos: usize,
    table: HashMap<(usize, usize), Vec<(usize, i64)>>,
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.num_pos
    }

    pub fn x_index(&self, i: usize) -> usize {
        debug_assert!(i < self.num_pos);
        i
    }

    pub fn y_index(&self, i: usize) -> usize {
        debug_assert!(i < self.num_pos);
        self.num_pos + i
    }

    pub fn cartan_index(&self, k: usize) -> usize {
        debug_assert!(k < self.rank());
        2 * self.num_pos + k
    }

    pub fn basis_kind(&self, idx: usize) -> BasisKind {
        if idx < self.num_pos {
            BasisKind::PosRoot(idx)
        } else if idx < 2 * self.num_pos {
            BasisKind::NegRoot(idx - self.num_pos)
        } else {
            BasisKind::Cartan(idx - 2 * self.num_pos)
        }
    }

    /// Structure constants of `[b_i, b_j]`, i < j, as stored.
    pub fn table_entry(&self, i: usize, j: usize) -> Option<&[(usize, i64)]> {
        debug_assert!(i < j);
        self.table.get(&(i, j)).map(Vec::as_slice)
    }

    /// Accumulate `coeff * [b_i, b_j]` into `acc`.
    fn pair_bracket_into(&self, i: usize, j: usize, coeff: &Rat, acc: &mut Element) {
        if i == j {
            return;
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        if let Some(entries) = self.table.get(&(a, b)) {
            for &(k, c) in entries {
                let c = if flip { -c } else { c };
                acc.add_term(k, coeff * Rat::from_integer(c.into()));
            }
        }
    }

    /// Lie bracket, the bilinear extension of the structure-constant table.
    pub fn bracket(&self, a: &Element, b: &Element) -> Element {
        let mut acc = Element::zero();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                if i == j {
                    continue;
                }
                let coeff = ca * cb;
                self.pair_bracket_into(i, j, &coeff, &mut acc);
            }
        }
        acc
    }

    /// Matrix of `ad a` in the Chevalley basis: column j holds `[a, b_j]`.
    pub fn ad_matrix(&self, a: &Element) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut col = Element::zero();
            for (i, ca) in a.terms() {
                self.pair_bracket_into(i, j, ca, &mut col);
            }
            for (k, c) in col.terms() {
                *m.at_mut(k, j) = c.clone();
            }
        }
        m
    }

    /// Apply `ad a` to a dense vector.
    pub fn ad_apply(&self, a: &Element, v: &[Rat]) -> Vec<Rat> {
        let mut acc = Element::zero();
        for (i, ca) in a.terms() {
            for (j, cv) in v.iter().enumerate() {
                if cv.is_zero() || i == j {
                    continue;
                }
                let coeff = ca * cv;
                self.pair_bracket_into(i, j, &coeff, &mut acc);
            }
        }
        acc.to_dense(self.dim)
    }

    /// Nilpotency test by iterating image subspaces of `ad a` until they
    /// stabilize (at most `dim` steps); nilpotent iff the chain hits zero.
    pub fn is_nilpotent_element(&self, a: &Element) -> bool {
        let mut space = Subspace::full(self.dim);
        loop {
            let rows: Vec<Vec<Rat>> = (0..space.dim())
                .map(|r| self.ad_apply(a, space.basis().row(r)))
                .collect();
            let image = Subspace::from_rows(self.dim, QMatrix::from_rows(rows));
            if image.dim() == 0 {
                return true;
            }
            if image.dim() == space.dim() {
                return false;
            }
            space = image;
        }
    }

    /// Coordinates of the coroot `beta^v` over the Cartan generators.
    pub fn coroot_coeffs(&self, pos_idx: usize) -> Vec<i64> {
        let rs = &self.root_system;
        let beta = &rs.positive_roots[pos_idx];
        let norms = rs.simple_type.simple_norms_sq();
        let nb = rs.norm_sq_of(pos_idx);
        beta.coeffs
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                let num = m * norms[k];
                assert_eq!(num % nb, 0, "non-integral coroot coefficient");
                num / nb
            })
            .collect()
    }

    /// For `h` in the Cartan span, the (integer) eigenvalue of `ad h` on each
    /// basis vector. Returns `None` if `h` has root-vector support or a
    /// non-integer eigenvalue shows up.
    pub fn ad_h_weights(&self, h: &Element) -> Option<Vec<i64>> {
        let rank = self.rank();
        let mut t = vec![Rat::zero(); rank];
        for (i, c) in h.terms() {
            match self.basis_kind(i) {
                BasisKind::Cartan(k) => t[k] = c.clone(),
                _ => return None,
            }
        }
        let mut weights = vec![0i64; self.dim];
        for (idx, w) in weights.iter_mut().enumerate() {
            let value: Rat = match self.basis_kind(idx) {
                BasisKind::PosRoot(b) | BasisKind::NegRoot(b) => {
                    let beta = &self.root_system.positive_roots[b].coeffs;
                    let mut acc = Rat::zero();
                    for (k, tk) in t.iter().enumerate() {
                        if !tk.is_zero() {
                            let pairing = self.root_system.pairing_with_simple(beta, k);
                            acc += tk * Rat::from_integer(pairing.into());
                        }
                    }
                    if matches!(self.basis_kind(idx), BasisKind::NegRoot(_)) {
                        -acc
                    } else {
                        acc
                    }
                }
                BasisKind::Cartan(_) => Rat::zero(),
            };
            if !value.is_integer() {
                return None;
            }
            *w = i64::try_from(value.to_integer()).ok()?;
        }
        Some(weights)
    }

    /// Deterministic dump of the structure-constant table, one line per
    /// `(i, j, k, c)` with `i < j`, for cross-version regression diffing.
    pub fn dump_structure_constants(&self, out: &mut impl Write) -> io::Result<()> {
        let mut keys: Vec<&(usize, usize)> = self.table.keys().collect();
        keys.sort();
        for &&(i, j) in &keys {
            for &(k, c) in &self.table[&(i, j)] {
                writeln!(out, "{} {} {} {}", i, j, k, c)?;
            }
        }
        Ok(())
    }

    /// Kernel of `ad a` as a subspace (used by the centralizer machinery).
    pub fn ad_kernel(&self, a: &Element) -> Subspace {
        kernel_basis(&self.ad_matrix(a))
    }

    /// Fault-injection hook: flip the sign of the first stored root-vector
    /// structure constant. Antisymmetry survives (the mirrored entry is
    /// derived), the Jacobi identity does not.
    #[doc(hidden)]
    pub fn corrupt_structure_constant_for_tests(&mut self) {
        let key = self
            .table
            .keys()
            .filter(|&&(i, j)| i < self.num_pos && j < self.num_pos)
            .min()
            .copied()
            .expect("no root-vector brackets to corrupt");
        for entry in self.table.get_mut(&key).expect("key just found") {
            entry.1 = -entry.1;
        }
    }
}

/// Positive-pair Chevalley constants `N_{alpha,beta}` keyed by root indices
/// `(i, j)` with `i < j` in the root order.
struct ConstantTable<'a> {
    rs: &'a RootSystem,
    n_pos: HashMap<(usize, usize), i64>,
}

impl<'a> ConstantTable<'a> {
    /// Lookup for positive roots in either order.
    fn npos(&self, i: usize, j: usize) -> Rational64 {
        let v = if i < j {
            self.n_pos.get(&(i, j)).copied().unwrap_or(0)
        } else {
            -self.n_pos.get(&(j, i)).copied().unwrap_or(0)
        };
        Rational64::from_integer(v)
    }

    /// General `N_{u,v}` for signed roots `u`, `v` with `u + v` a root.
    ///
    /// Mixed-sign values are folded back onto positive pairs through the
    /// cyclic identity N_{a,b}/(c,c) = N_{b,c}/(a,a) for a + b + c = 0.
    fn nsig(&self, u: &[i64], v: &[i64]) -> Rational64 {
        let sum: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        debug_assert!(sum.iter().any(|&c| c != 0), "nsig with v = -u");
        if !self.rs.is_root(&sum) {
            return Rational64::zero();
        }
        let u_pos = u.iter().all(|&c| c >= 0);
        let v_pos = v.iter().all(|&c| c >= 0);
        match (u_pos, v_pos) {
            (true, true) => {
                let iu = self.rs.positive_index(u).expect("u not a root");
                let iv = self.rs.positive_index(v).expect("v not a root");
                self.npos(iu, iv)
            }
            (false, false) => {
                let nu: Vec<i64> = u.iter().map(|c| -c).collect();
                let nv: Vec<i64> = v.iter().map(|c| -c).collect();
                -self.nsig(&nu, &nv)
            }
            (true, false) => {
                // u = xi, v = -eta, both xi and eta positive.
                let eta: Vec<i64> = v.iter().map(|c| -c).collect();
                if sum.iter().all(|&c| c >= 0) {
                    // delta = xi - eta positive: N_{xi,-eta} = |delta|^2 N_{delta,eta} / |xi|^2
                    let idelta = self.rs.positive_index(&sum).expect("delta not a root");
                    let ieta = self.rs.positive_index(&eta).expect("eta not a root");
                    let ixi = self.rs.positive_index(u).expect("xi not a root");
                    self.npos(idelta, ieta)
                        * Rational64::new(self.rs.norm_sq_of(idelta), self.rs.norm_sq_of(ixi))
                } else {
                    // delta' = eta - xi positive: N_{xi,-eta} = |delta'|^2 N_{delta',xi} / |eta|^2
                    let dprime: Vec<i64> = sum.iter().map(|c| -c).collect();
                    let id = self.rs.positive_index(&dprime).expect("delta' not a root");
                    let ixi = self.rs.positive_index(u).expect("xi not a root");
                    let ieta = self.rs.positive_index(&eta).expect("eta not a root");
                    self.npos(id, ixi)
                        * Rational64::new(self.rs.norm_sq_of(id), self.rs.norm_sq_of(ieta))
                }
            }
            (false, true) => -self.nsig(v, u),
        }
    }
}

/// Compute the positive-pair constants by the extraspecial recursion: the
/// minimal decomposition of each root gets `p + 1`; the rest follow from the
/// Jacobi identity on (x_{a0}, x_{b0}, x_{-alpha}).
fn compute_positive_constants(rs: &RootSystem) -> HashMap<(usize, usize), i64> {
    let mut table = ConstantTable {
        rs,
        n_pos: HashMap::new(),
    };
    for (g_idx, gamma) in rs.positive_roots.iter().enumerate() {
        if gamma.height() == 1 {
            continue;
        }
        // All decompositions gamma = a + b with a < b in the root order.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a_idx in 0..g_idx {
            let a = &rs.positive_roots[a_idx];
            let rest: Vec<i64> = gamma
                .coeffs
                .iter()
                .zip(&a.coeffs)
                .map(|(g, ac)| g - ac)
                .collect();
            if rest.iter().all(|&c| c >= 0) {
                if let Some(b_idx) = rs.positive_index(&rest) {
                    if a_idx < b_idx {
                        pairs.push((a_idx, b_idx));
                    }
                }
            }
        }
        pairs.sort_unstable();
        let &(a0, b0) = pairs.first().expect("non-simple root with no decomposition");
        let p = down_string(rs, b0, a0);
        table.n_pos.insert((a0, b0), p + 1);

        let alpha0 = rs.positive_roots[a0].coeffs.clone();
        let beta0 = rs.positive_roots[b0].coeffs.clone();
        let n0 = Rational64::from_integer(p + 1);
        for &(ai, bi) in &pairs[1..] {
            let alpha = &rs.positive_roots[ai].coeffs;
            let beta_norm = rs.norm_sq_of(bi);
            let gamma_norm = rs.norm_sq(&gamma.coeffs);
            let neg_alpha: Vec<i64> = alpha.iter().map(|c| -c).collect();

            // Jacobi on (x_{a0}, x_{b0}, x_{-alpha}), read off the x_beta part:
            // N_{a0,b0} N_{gamma,-alpha} + N_{b0,-alpha} N_{b0-alpha,a0}
            //                           + N_{-alpha,a0} N_{a0-alpha,b0} = 0.
            let diff_b: Vec<i64> = beta0.iter().zip(alpha).map(|(b, a)| b - a).collect();
            let t2 = if rs.is_root(&diff_b) {
                table.nsig(&beta0, &neg_alpha) * table.nsig(&diff_b, &alpha0)
            } else {
                Rational64::zero()
            };
            let diff_a: Vec<i64> = alpha0.iter().zip(alpha).map(|(b, a)| b - a).collect();
            let t3 = if rs.is_root(&diff_a) {
                table.nsig(&neg_alpha, &alpha0) * table.nsig(&diff_a, &beta0)
            } else {
                Rational64::zero()
            };
            let n_gamma_neg_alpha = -(t2 + t3) / n0;
            // Cyclic shift onto the positive pair:
            // N_{alpha,beta} = -N_{gamma,-alpha} |gamma|^2 / |beta|^2.
            let n_ab = -n_gamma_neg_alpha * Rational64::new(gamma_norm, beta_norm);
            assert!(n_ab.is_integer(), "non-integral structure constant");
            table.n_pos.insert((ai, bi), n_ab.to_integer());
        }
    }
    table.n_pos
}

/// p of the a-string through b: max k with `b - k a` a root.
fn down_string(rs: &RootSystem, b: usize, a: usize) -> i64 {
    let bv = &rs.positive_roots[b].coeffs;
    let av = &rs.positive_roots[a].coeffs;
    let mut p = 0i64;
    let mut cur: Vec<i64> = bv.clone();
    loop {
        for (c, ac) in cur.iter_mut().zip(av) {
            *c -= ac;
        }
        if cur.iter().all(|&c| c == 0) || !rs.is_root(&cur) {
            break;
        }
        p += 1;
    }
    p
}

/// Construct the Lie algebra of a root system on its Chevalley basis.
pub fn build_algebra(rs: RootSystem) -> LieAlgebra {
    let n = rs.num_positive();
    let rank = rs.rank();
    let dim = 2 * n + rank;
    let n_pos = compute_positive_constants(&rs);
    let consts = ConstantTable { rs: &rs, n_pos };

    let mut table: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
    let mut insert = |i: usize, j: usize, entries: Vec<(usize, i64)>| {
        debug_assert!(i < j);
        if !entries.is_empty() {
            table.insert((i, j), entries);
        }
    };

    // Norms for coroot coefficients.
    let simple_norms = rs.simple_type.simple_norms_sq();

    // [x_a, x_b] and [y_a, y_b].
    for a in 0..n {
        for b in (a + 1)..n {
            let sum: Vec<i64> = rs.positive_roots[a]
                .coeffs
                .iter()
                .zip(&rs.positive_roots[b].coeffs)
                .map(|(x, y)| x + y)
                .collect();
            if let Some(s) = rs.positive_index(&sum) {
                let c = consts.npos(a, b);
                assert!(c.is_integer());
                let c = c.to_integer();
                assert!(c != 0, "vanishing constant on a root sum");
                insert(a, b, vec![(s, c)]);
                // [y_a, y_b] = [x_{-a}, x_{-b}] = -N_{a,b} y_{a+b}.
                insert(n + a, n + b, vec![(n + s, -c)]);
            }
        }
    }

    // [x_a, y_b].
    for a in 0..n {
        for b in 0..n {
            let i = a;
            let j = n + b;
            if a == b {
                // [x_beta, y_beta] = h_beta (coroot over the Cartan generators).
                let beta = &rs.positive_roots[a];
                let nb = rs.norm_sq_of(a);
                let entries: Vec<(usize, i64)> = beta
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m != 0)
                    .map(|(k, &m)| {
                        let num = m * simple_norms[k];
                        assert_eq!(num % nb, 0, "non-integral coroot coefficient");
                        (2 * n + k, num / nb)
                    })
                    .collect();
                insert(i, j, entries);
                continue;
            }
            let diff: Vec<i64> = rs.positive_roots[a]
                .coeffs
                .iter()
                .zip(&rs.positive_roots[b].coeffs)
                .map(|(x, y)| x - y)
                .collect();
            if let Some((d, negative)) = rs.signed_index(&diff) {
                let neg_b: Vec<i64> = rs.positive_roots[b].coeffs.iter().map(|c| -c).collect();
                let c = consts.nsig(&rs.positive_roots[a].coeffs, &neg_b);
                assert!(c.is_integer(), "non-integral mixed constant");
                let c = c.to_integer();
                assert!(c != 0, "vanishing constant on a root difference");
                let target = if negative { n + d } else { d };
                insert(i, j, vec![(target, c)]);
            }
        }
    }

    // [h_k, x_a] = <beta_a, alpha_k^v> x_a and [h_k, y_a] = -<...> y_a; the
    // table keeps (i, j) with i < j, so store [x_a, h_k] = -[h_k, x_a].
    for a in 0..n {
        let beta = &rs.positive_roots[a].coeffs;
        for k in 0..rank {
            let pairing = rs.pairing_with_simple(beta, k);
            if pairing == 0 {
                continue;
            }
            insert(a, 2 * n + k, vec![(a, -pairing)]);
            insert(n + a, 2 * n + k, vec![(n + a, pairing)]);
        }
    }

    LieAlgebra {
        root_system: rs,
        dim,
        num_pos: n,
        table,
    }
}
