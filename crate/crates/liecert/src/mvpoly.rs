//! Sparse multivariate polynomials over `Q` with a Buchberger engine.
//!
//! The only question this module ultimately answers is: does a set of
//! homogeneous polynomials vanish simultaneously anywhere besides the
//! origin? That is the "for every nonzero parameter tuple" quantifier of
//! the surjectivity certificates made algorithmic. The monomial order is
//! fixed to degree-reverse-lexicographic; the pure-power criterion used by
//! [`origin_only`] is order-independent.

use crate::ratmat::Rat;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MvPolyError {
    #[error("generators must share the variable count")]
    MixedVariableCounts,
    #[error("operation requires homogeneous input")]
    NonHomogeneous,
    #[error("minor extraction needs rows <= cols, got {rows}x{cols}")]
    TooManyRows { rows: usize, cols: usize },
    #[error("gcd oracle requires exactly two variables")]
    NotTwoVariables,
    #[error("gcd oracle requires a nonzero generator")]
    AllZero,
}

/// Exponent vector with the degrevlex order baked into `Ord`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pure power of a single variable (exponent may be zero only if the
    /// whole monomial is 1; that case returns None).
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut var = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if var.is_some() {
                    return None;
                }
                var = Some(i);
            }
        }
        var
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Degrevlex tie-break: the last differing exponent decides,
        // with the smaller exponent belonging to the larger monomial.
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; terms stored in ascending degrevlex
/// order (the map is keyed by the order), no zero coefficients kept.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(num_vars);
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut p = MultiPoly::zero(num_vars);
        p.add_term(Monomial::var(num_vars, i), Rat::one());
        p
    }

    /// Degree-1 form `sum_i coeffs[i] x_i`.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.num_vars);
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return false,
                _ => {}
            }
        }
        true
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.num_vars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scale so the coefficients are coprime integers with positive leading
    /// coefficient. Controls growth during reduction chains.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let dense: Vec<Rat> = self.terms.values().cloned().collect();
        let normalized = crate::ratmat::normalize_primitive(&dense);
        let mut sign_fix = normalized.clone();
        // normalize_primitive makes the first (lowest monomial) entry
        // positive; flip so the leading coefficient is positive instead.
        if sign_fix.last().map(Signed::is_negative).unwrap_or(false) {
            for c in &mut sign_fix {
                *c = -c.clone();
            }
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .keys()
                .cloned()
                .zip(sign_fix)
                .collect(),
        }
    }

    /// Evaluate at a point.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = Rat::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", names.get(i).unwrap_or(&"x"))?;
                } else if e > 1 {
                    write!(f, "*{}^{}", names.get(i).unwrap_or(&"x"), e)?;
                }
            }
        }
        Ok(())
    }
}

/// Full normal form of `f` modulo `basis` under degrevlex.
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut work = f.clone();
    let mut remainder = MultiPoly::zero(f.num_vars());
    'outer: while let Some((lm, lc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            if let Some((gm, gc)) = g.leading() {
                if gm.divides(&lm) {
                    let factor = &lc / gc;
                    let shift = lm.div(gm);
                    work = work.sub(&g.mul_term(&shift, &factor));
                    continue 'outer;
                }
            }
        }
        remainder.add_term(lm.clone(), lc);
        let mut rest = work;
        rest.terms.remove(&lm);
        work = rest;
    }
    remainder
}

/// Normal form up to a positive scalar, with the rational content stripped
/// after every elimination step. Exact-division chains otherwise blow the
/// coefficients up exponentially on the bigger minor ideals.
fn reduce_primitive(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut work = f.clone();
    let mut remainder = MultiPoly::zero(f.num_vars());
    'outer: while let Some((lm, lc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            if let Some((gm, gc)) = g.leading() {
                if gm.divides(&lm) {
                    let factor = &lc / gc;
                    let shift = lm.div(gm);
                    work = work.sub(&g.mul_term(&shift, &factor));
                    // Joint rescale keeps remainder and work consistent
                    // (their monomials never overlap).
                    let joined = remainder.add(&work);
                    if let Some((_, c0)) = joined.leading() {
                        let c0 = c0.clone();
                        let c1 = joined.primitive().leading().unwrap().1.clone();
                        let ratio = c1 / c0;
                        work = work.scale(&ratio);
                        remainder = remainder.scale(&ratio);
                    }
                    continue 'outer;
                }
            }
        }
        remainder.add_term(lm.clone(), lc);
        let mut rest = work;
        rest.terms.remove(&lm);
        work = rest;
    }
    remainder
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading().expect("s_poly of zero");
    let (gm, gc) = g.leading().expect("s_poly of zero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &fc.recip());
    let b = g.mul_term(&l.div(gm), &gc.recip());
    a.sub(&b)
}

/// Interreduce a generator set: drop zeros and duplicates, then reduce each
/// polynomial against the others until nothing changes. Cuts the highly
/// redundant minor sets down before any S-pair is formed.
///
/// Equal-degree homogeneous input (the minor sets) is linear algebra: the
/// span of the generators inside one graded piece, echelonized over the
/// monomial basis.
fn interreduce_input(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut set: Vec<MultiPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let p = g.primitive();
            if !set.contains(&p) {
                set.push(p);
            }
        }
    }
    if set.is_empty() {
        return set;
    }
    let same_degree = set.iter().all(MultiPoly::is_homogeneous)
        && set.windows(2).all(|w| w[0].degree() == w[1].degree());
    if same_degree {
        return echelonize_equal_degree(&set);
    }
    loop {
        set.sort();
        let mut changed = false;
        let mut next: Vec<MultiPoly> = Vec::new();
        for i in 0..set.len() {
            let against: Vec<MultiPoly> = next
                .iter()
                .cloned()
                .chain(set[i + 1..].iter().cloned())
                .collect();
            let r = reduce(&set[i], &against);
            if r != set[i] {
                changed = true;
            }
            if !r.is_zero() {
                let p = r.primitive();
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        set = next;
        if !changed {
            return set;
        }
    }
}

/// Reduced echelon basis of the span of equal-degree homogeneous
/// polynomials, columns ordered by descending monomial.
///
/// Elimination runs over integers with per-row content removal; plain
/// rational elimination explodes on these dense coefficient blocks.
fn echelonize_equal_degree(set: &[MultiPoly]) -> Vec<MultiPoly> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    let num_vars = set[0].num_vars();
    let mut monomials: Vec<Monomial> = set
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    monomials.reverse();
    let col_of: std::collections::HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();

    fn normalize_row(row: &mut [BigInt]) {
        let mut g = BigInt::zero();
        for v in row.iter() {
            g = g.gcd(v);
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }

    // Input polynomials are primitive, so coefficients are integers.
    let ncols = monomials.len();
    let mut rows: Vec<Vec<BigInt>> = set
        .iter()
        .map(|p| {
            let mut row = vec![BigInt::zero(); ncols];
            for (m, c) in p.terms() {
                debug_assert!(c.is_integer());
                row[col_of[m]] = c.numer().clone();
            }
            row
        })
        .collect();

    let mut pivot_rows: Vec<(usize, Vec<BigInt>)> = Vec::new(); // (col, row)
    for mut row in rows.drain(..) {
        if pivot_rows.len() == ncols {
            break;
        }
        // Eliminate against existing pivots (fraction-free cross-multiply).
        for (pcol, prow) in &pivot_rows {
            if row[*pcol].is_zero() {
                continue;
            }
            let a = prow[*pcol].clone();
            let b = row[*pcol].clone();
            for (x, p) in row.iter_mut().zip(prow) {
                *x = &*x * &a - p * &b;
            }
            normalize_row(&mut row);
        }
        if let Some(col) = row.iter().position(|v| !v.is_zero()) {
            if row[col].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            pivot_rows.push((col, row));
            pivot_rows.sort_by_key(|(c, _)| *c);
        }
    }
    // Back-substitute for the reduced form.
    for i in (0..pivot_rows.len()).rev() {
        let (pcol, prow) = pivot_rows[i].clone();
        for j in 0..i {
            let jcol = pivot_rows[j].0;
            let upper = &mut pivot_rows[j].1;
            if upper[pcol].is_zero() {
                continue;
            }
            let a = prow[pcol].clone();
            let b = upper[pcol].clone();
            for (x, p) in upper.iter_mut().zip(&prow) {
                *x = &*x * &a - p * &b;
            }
            normalize_row(upper);
            if upper[jcol].is_negative() {
                for v in upper.iter_mut() {
                    *v = -v.clone();
                }
            }
        }
    }

    pivot_rows
        .into_iter()
        .map(|(_, row)| {
            let mut p = MultiPoly::zero(num_vars);
            for (c, m) in monomials.iter().enumerate() {
                if !row[c].is_zero() {
                    p.add_term(m.clone(), Rat::from_integer(row[c].clone()));
                }
            }
            p.primitive()
        })
        .collect()
}

/// State of an incremental Buchberger run: pairs are processed smallest
/// lcm degree first (normal selection), with the coprime criterion.
struct BuchbergerState {
    basis: Vec<MultiPoly>,
    /// (lcm degree, i, j) min-queue.
    pairs: std::collections::BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>>,
}

impl BuchbergerState {
    fn new(gens: &[MultiPoly]) -> Self {
        let basis = interreduce_input(gens);
        let mut pairs = std::collections::BinaryHeap::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let lcm = basis[i]
                    .leading()
                    .unwrap()
                    .0
                    .lcm(basis[j].leading().unwrap().0);
                pairs.push(std::cmp::Reverse((lcm.degree(), i, j)));
            }
        }
        BuchbergerState { basis, pairs }
    }

    /// Process pairs until one produces a new basis element; returns its
    /// index, or None once the basis is complete.
    fn step(&mut self) -> Option<usize> {
        while let Some(std::cmp::Reverse((_, i, j))) = self.pairs.pop() {
            let lmi = self.basis[i].leading().unwrap().0;
            let lmj = self.basis[j].leading().unwrap().0;
            if lmi.is_coprime_with(lmj) {
                continue;
            }
            let s = s_poly(&self.basis[i], &self.basis[j]);
            let r = reduce_primitive(&s, &self.basis);
            if r.is_zero() {
                continue;
            }
            let r = r.primitive();
            let new_idx = self.basis.len();
            let lm_new = r.leading().unwrap().0.clone();
            for k in 0..new_idx {
                let lcm = self.basis[k].leading().unwrap().0.lcm(&lm_new);
                self.pairs
                    .push(std::cmp::Reverse((lcm.degree(), k, new_idx)));
            }
            self.basis.push(r);
            return Some(new_idx);
        }
        None
    }

    fn run_to_completion(&mut self) {
        while self.step().is_some() {}
    }

    /// Interreduce the completed basis: drop redundant leading terms, fully
    /// reduce tails, and monic-normalize. Canonical for the ideal.
    fn finish(self) -> Vec<MultiPoly> {
        let basis = self.basis;
        let mut minimal: Vec<MultiPoly> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lm = g.leading().unwrap().0;
            let redundant = basis.iter().enumerate().any(|(j, other)| {
                j != i && {
                    let olm = other.leading().unwrap().0;
                    olm.divides(lm) && (olm != lm || j < i)
                }
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced: Vec<MultiPoly> = Vec::new();
        for i in 0..minimal.len() {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce(&minimal[i], &others);
            if !r.is_zero() {
                reduced.push(r.monic());
            }
        }
        reduced.sort();
        reduced.dedup();
        reduced
    }
}

/// Buchberger's algorithm with the coprime-leading-monomial criterion,
/// degree-ordered pair selection, content normalization after each
/// reduction, and a final interreduction. The result is monic and sorted,
/// hence canonical for the ideal.
pub fn buchberger(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    assert!(!gens.is_empty(), "buchberger on an empty generator list");
    let n = gens[0].num_vars();
    assert!(
        gens.iter().all(|g| g.num_vars() == n),
        "mixed variable counts"
    );
    let mut state = BuchbergerState::new(gens);
    if state.basis.is_empty() {
        return Vec::new();
    }
    state.run_to_completion();
    state.finish()
}

/// Does the homogeneous ideal generated by `gens` vanish only at the origin
/// (over the algebraic closure)?
///
/// Standard criterion: a Groebner basis must contain, for every variable,
/// an element whose leading monomial is a pure power of it. The "yes"
/// direction short-circuits: any ideal member with a pure-power leading
/// monomial already puts that power in the leading-term ideal, so full
/// coverage during the run certifies the verdict before the basis
/// completes. A "no" answer always waits for the completed basis.
pub fn origin_only(gens: &[MultiPoly]) -> Result<bool, MvPolyError> {
    if gens.is_empty() {
        return Ok(false);
    }
    let n = gens[0].num_vars();
    if gens.iter().any(|g| g.num_vars() != n) {
        return Err(MvPolyError::MixedVariableCounts);
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(MvPolyError::NonHomogeneous);
    }
    let nonzero: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(false);
    }

    let mut covered = vec![false; n];
    let cover = |g: &MultiPoly, covered: &mut Vec<bool>| {
        if let Some((lm, _)) = g.leading() {
            if let Some(v) = lm.pure_power_var() {
                covered[v] = true;
            }
        }
    };
    let mut state = BuchbergerState::new(&nonzero);
    // A unit in the ideal means an empty variety, which in particular has
    // no nonzero point. Homogeneous inputs of positive degree never
    // produce one, but handle it coherently.
    if state.basis.iter().any(|g| g.degree() == Some(0)) {
        return Ok(true);
    }
    for g in &state.basis {
        cover(g, &mut covered);
    }
    while !covered.iter().all(|&b| b) {
        match state.step() {
            Some(idx) => cover(&state.basis[idx].clone(), &mut covered),
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Independent cross-check for two-variable instances: a set of homogeneous
/// binary forms has a common nonzero root iff their gcd is nonconstant.
/// Works through the dehomogenization to univariate polynomials, entirely
/// separate from the Groebner path.
pub fn two_var_gcd_oracle(gens: &[MultiPoly]) -> Result<bool, MvPolyError> {
    if gens.iter().any(|g| g.num_vars() != 2) || gens.is_empty() {
        return Err(MvPolyError::NotTwoVariables);
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(MvPolyError::NonHomogeneous);
    }
    let nonzero: Vec<&MultiPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(MvPolyError::AllZero);
    }
    // f(a, b) homogeneous of degree d dehomogenizes to u(x) = f(x, 1);
    // f is divisible by b exactly when deg u < d.
    let mut all_div_by_b = true;
    let mut gcd: Option<Vec<Rat>> = None;
    for f in nonzero {
        let d = f.degree().unwrap() as usize;
        let mut u = vec![Rat::zero(); d + 1];
        for (m, c) in f.terms() {
            u[m.0[0] as usize] = c.clone();
        }
        let deg_u = univ_degree(&u);
        if deg_u == Some(d) {
            all_div_by_b = false;
        }
        gcd = Some(match gcd {
            None => u,
            Some(g) => univ_gcd(&g, &u),
        });
    }
    if all_div_by_b {
        return Ok(false);
    }
    let g = gcd.unwrap();
    Ok(univ_degree(&g) == Some(0))
}

fn univ_degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn univ_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = univ_degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    while let Some(dr) = univ_degree(&r) {
        if dr < db {
            break;
        }
        let factor = &r[dr] / &b[db];
        for i in 0..=db {
            let tgt = dr - db + i;
            let delta = &factor * &b[i];
            r[tgt] -= delta;
        }
    }
    r
}

fn univ_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    loop {
        match univ_degree(&y) {
            None => return x,
            Some(_) => {
                let r = univ_rem(&x, &y);
                x = y;
                y = r;
            }
        }
    }
}

/// All `rows x rows` minors of a polynomial matrix with `rows <= cols`,
/// expanded exactly. Identically-zero minors are dropped and duplicates
/// (up to sign) deduplicated; the surviving representative is the exact
/// determinant, not a rescaling.
pub fn maximal_minors(m: &[Vec<MultiPoly>]) -> Result<Vec<MultiPoly>, MvPolyError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows > cols {
        return Err(MvPolyError::TooManyRows { rows, cols });
    }
    if rows == 0 {
        return Ok(Vec::new());
    }
    let n = m[0][0].num_vars();
    // Keyed by the sign-and-content normal form; values keep the exact
    // determinant of the first column selection that produced each class.
    let mut out: std::collections::BTreeMap<MultiPoly, MultiPoly> =
        std::collections::BTreeMap::new();
    let mut selection: Vec<usize> = (0..rows).collect();
    loop {
        let det = poly_det(m, &selection, n);
        if !det.is_zero() {
            out.entry(det.primitive()).or_insert(det);
        }
        // Next combination in lexicographic order.
        let mut i = rows;
        loop {
            if i == 0 {
                return Ok(out.into_values().collect());
            }
            i -= 1;
            if selection[i] < cols - (rows - i) {
                selection[i] += 1;
                for j in (i + 1)..rows {
                    selection[j] = selection[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn poly_det(m: &[Vec<MultiPoly>], cols: &[usize], num_vars: usize) -> MultiPoly {
    let k = cols.len();
    if k == 1 {
        return m[0][cols[0]].clone();
    }
    let mut acc = MultiPoly::zero(num_vars);
    for (pos, &c) in cols.iter().enumerate() {
        if m[0][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != pos)
            .map(|(_, &cc)| cc)
            .collect();
        let sub = poly_det(&m[1..], &rest, num_vars);
        let term = m[0][c].mul(&sub);
        if pos % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}
