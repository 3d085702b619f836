//! The quantum exterior superalgebra on `dξ_1, …, dξ_{m+n}`, the truncated
//! de Rham complexes `D_q(m|n, r)^{(•)}` with their super-weight blocks, the
//! differentials `d^s`, and exact cohomology.
//!
//! A degree-`s` cochain basis form is `x^(α) ⊗ x^ν ⊗ dξ^ξ` with `|ξ| = s`.
//! The differential acts by
//! `d(x⊗dξ^ξ) = Σ_j q^(ε_j∗⟨α,ν⟩) (−q)^(ε_j∗ξ) ∂_j(x) ⊗ dξ^(ξ+ε_j)`
//! where `∂_j` lowers the j-th exponent (even) or clears the j-th odd bit,
//! and terms with colliding ξ-bits vanish. The super-weight
//! `(α + ξ_even ; (ν + ξ_odd) mod 2)` is preserved by `d`, so the complex
//! splits into finite weight blocks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{Reducer, SVec, SparseMatrix};
use crate::omega::GradedPiece;
use crate::scalars::{binom, CycNum, Int};
use crate::superindex::{enumerate_graded, Shape, SuperTuple};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Indices
// ---------------------------------------------------------------------------

/// Multi-index of a wedge monomial `dξ^bits`, one bit per variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct XiIndex {
    pub bits: Vec<u8>,
}

impl XiIndex {
    pub fn empty(len: usize) -> XiIndex {
        XiIndex { bits: vec![0; len] }
    }

    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|&b| b as u64).sum()
    }

    /// Ascending index word `i₁ < ⋯ < i_s` (1-based).
    pub fn word(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Wedge of two multi-indices: `None` on bit collision, otherwise the union
/// with coefficient `(−q)^k`, `k` the inversion count between the supports.
pub fn wedge(a: &XiIndex, b: &XiIndex) -> Option<(XiIndex, u64)> {
    debug_assert_eq!(a.bits.len(), b.bits.len());
    let mut bits = Vec::with_capacity(a.bits.len());
    for (x, y) in a.bits.iter().zip(&b.bits) {
        if *x == 1 && *y == 1 {
            return None;
        }
        bits.push(x + y);
    }
    let mut inversions = 0u64;
    for (i, &x) in a.bits.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for &y in &b.bits[..i] {
            inversions += y as u64;
        }
    }
    Some((XiIndex { bits }, inversions))
}

/// Basis form of the cochain complex: coefficient monomial and ξ-word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DFormIndex {
    pub coeff: SuperTuple,
    pub xi: XiIndex,
}

impl DFormIndex {
    pub fn display(&self) -> String {
        format!(
            "x({:?};{:?}) xi{:?}",
            self.coeff.alpha,
            self.coeff.mu,
            self.xi.word()
        )
    }
}

/// Super-weight: exact even part `α + ξ_even`, odd part `(ν + ξ_odd) mod 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SuperWeight {
    pub even: Vec<u64>,
    pub odd: Vec<u8>,
}

impl SuperWeight {
    pub fn of_form(form: &DFormIndex, m: usize) -> SuperWeight {
        let even = (0..m)
            .map(|i| form.coeff.alpha[i] + form.xi.bits[i] as u64)
            .collect();
        let odd = (0..form.coeff.mu.len())
            .map(|j| (form.coeff.mu[j] + form.xi.bits[m + j]) % 2)
            .collect();
        SuperWeight { even, odd }
    }

    pub fn is_zero(&self) -> bool {
        self.even.iter().all(|&a| a == 0) && self.odd.iter().all(|&b| b == 0)
    }

    /// Count of even entries pinned at the ceiling `rℓ`.
    pub fn k_lambda(&self, shape: &Shape) -> usize {
        let cap = shape.r * shape.ell;
        self.even.iter().filter(|&&a| a == cap).count()
    }

    /// Count of vanishing even entries.
    pub fn h0_lambda(&self) -> usize {
        self.even.iter().filter(|&&a| a == 0).count()
    }

    /// Count of vanishing entries over all slots.
    pub fn h_lambda(&self) -> usize {
        self.h0_lambda() + self.odd.iter().filter(|&&b| b == 0).count()
    }

    pub fn nu_size(&self) -> usize {
        self.odd.iter().filter(|&&b| b == 1).count()
    }

    /// Critical: every slot is either a pinned even slot or zero.
    pub fn is_critical(&self, shape: &Shape) -> bool {
        self.k_lambda(shape) + self.h_lambda() == shape.m + shape.n
    }
}

/// All ξ-words of weight `s`, ordered lexicographically by index word.
pub fn xi_words(len: usize, s: u64) -> Vec<XiIndex> {
    let mut out = Vec::new();
    let mut cur = XiIndex::empty(len);
    fn rec(len: usize, pos: usize, rem: u64, cur: &mut XiIndex, out: &mut Vec<XiIndex>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if pos >= len || ((len - pos) as u64) < rem {
            return;
        }
        cur.bits[pos] = 1;
        rec(len, pos + 1, rem - 1, cur, out);
        cur.bits[pos] = 0;
        rec(len, pos + 1, rem, cur, out);
    }
    rec(len, 0, s, &mut cur, &mut out);
    out
}

/// Full degree-`s` basis of the truncated complex: ξ-major, then the
/// coefficient monomials of every Ω-degree in lexicographic order.
pub fn dform_basis(shape: &Shape, s: u64) -> Vec<DFormIndex> {
    let total = shape.m + shape.n;
    let mut out = Vec::new();
    for xi in xi_words(total, s) {
        for omega_deg in 0..=shape.top_degree() {
            for coeff in enumerate_graded(shape, omega_deg) {
                out.push(DFormIndex {
                    coeff,
                    xi: xi.clone(),
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The differential
// ---------------------------------------------------------------------------

/// Expansion `d(form) = Σ coeff · form'` by the weight-preserving rule.
pub fn d_term(shape: &Shape, form: &DFormIndex) -> Vec<(DFormIndex, CycNum)> {
    let spec = shape.spec();
    let m = shape.m;
    let total = m + shape.n;
    let mut out = Vec::new();
    let mut e1 = 0i64; // running Σ_{b<j} ⟨α,ν⟩_b
    let mut e2 = 0i64; // running Σ_{b<j} ξ_b
    for j in 1..=total {
        let jb = j - 1;
        if jb > 0 {
            e1 += if jb <= m {
                form.coeff.alpha[jb - 1] as i64
            } else {
                form.coeff.mu[jb - 1 - m] as i64
            };
            e2 += form.xi.bits[jb - 1] as i64;
        }
        if form.xi.bits[jb] == 1 {
            continue;
        }
        let target = if j <= m {
            if form.coeff.alpha[jb] == 0 {
                continue;
            }
            let mut alpha = form.coeff.alpha.clone();
            alpha[jb] -= 1;
            SuperTuple::new(alpha, form.coeff.mu.clone())
        } else {
            if form.coeff.mu[jb - m] == 0 {
                continue;
            }
            let mut mu = form.coeff.mu.clone();
            mu[jb - m] = 0;
            SuperTuple::new(form.coeff.alpha.clone(), mu)
        };
        let mut xi = form.xi.clone();
        xi.bits[jb] = 1;
        let mut coeff = spec.q_pow(e1 + e2);
        if e2 % 2 == 1 {
            coeff = coeff.neg();
        }
        out.push((DFormIndex { coeff: target, xi }, coeff));
    }
    out
}

/// Matrix of `d^s`, optionally restricted to one super-weight block.
pub fn d_matrix(shape: &Shape, s: u64, weight: Option<&SuperWeight>) -> SparseMatrix {
    let (src, dst) = match weight {
        None => (dform_basis(shape, s), dform_basis(shape, s + 1)),
        Some(w) => {
            let blocks = block_forms(shape, w);
            let get = |deg: usize| blocks.get(deg).cloned().unwrap_or_default();
            (get(s as usize), get(s as usize + 1))
        }
    };
    let index: BTreeMap<&DFormIndex, usize> =
        dst.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut entries = Vec::new();
    for (col, form) in src.iter().enumerate() {
        for (target, coeff) in d_term(shape, form) {
            let row = *index
                .get(&target)
                .expect("differential preserves the truncated basis");
            entries.push((row, col, coeff));
        }
    }
    SparseMatrix::new(dst.len(), src.len(), entries)
}

/// Report of a `d∘d = 0` sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub m: usize,
    pub n: usize,
    pub ell: u64,
    pub r: u64,
    pub ok: bool,
    pub enlarged_ok: bool,
    pub witness: Option<String>,
}

fn d_squared_vanishes(shape: &Shape) -> Option<String> {
    let total = (shape.m + shape.n) as u64;
    for s in 0..total {
        for form in dform_basis(shape, s) {
            let mut acc: BTreeMap<DFormIndex, CycNum> = BTreeMap::new();
            for (mid, c1) in d_term(shape, &form) {
                for (target, c2) in d_term(shape, &mid) {
                    let add = c1.mul(&c2);
                    match acc.remove(&target) {
                        Some(old) => {
                            let sum = old.add(&add);
                            if !sum.is_zero() {
                                acc.insert(target, sum);
                            }
                        }
                        None => {
                            if !add.is_zero() {
                                acc.insert(target, add);
                            }
                        }
                    }
                }
            }
            if !acc.is_empty() {
                return Some(format!("d² nonzero on {} at degree {s}", form.display()));
            }
        }
    }
    None
}

/// `d^(s+1)·d^s = 0` on the truncated complex and on a box-enlarged view.
pub fn complex_check(shape: &Shape) -> Result<ComplexReport> {
    let witness = d_squared_vanishes(shape);
    let enlarged = Shape {
        r: shape.r + 1,
        ..*shape
    };
    let enlarged_witness = d_squared_vanishes(&enlarged);
    Ok(ComplexReport {
        m: shape.m,
        n: shape.n,
        ell: shape.ell,
        r: shape.r,
        ok: witness.is_none(),
        enlarged_ok: enlarged_witness.is_none(),
        witness: witness.or(enlarged_witness),
    })
}

// ---------------------------------------------------------------------------
// Quantum differential operators
// ---------------------------------------------------------------------------

/// Matrix of the lowering operator `∂_i : Ω^(s) → Ω^(s−1)` with coefficient
/// `q^(ε_i∗⟨α,ν⟩)`.
pub fn partial_op_matrix(shape: &Shape, i: usize, s: u64) -> SparseMatrix {
    let spec = shape.spec();
    let m = shape.m;
    let src = GradedPiece::new(*shape, s);
    if s == 0 {
        return SparseMatrix::zero(0, src.dim());
    }
    let dst = GradedPiece::new(*shape, s - 1);
    let mut entries = Vec::new();
    for (col, t) in src.basis.iter().enumerate() {
        let target = if i <= m {
            if t.alpha[i - 1] == 0 {
                continue;
            }
            let mut alpha = t.alpha.clone();
            alpha[i - 1] -= 1;
            SuperTuple::new(alpha, t.mu.clone())
        } else {
            if t.mu[i - 1 - m] == 0 {
                continue;
            }
            let mut mu = t.mu.clone();
            mu[i - 1 - m] = 0;
            SuperTuple::new(t.alpha.clone(), mu)
        };
        let mut e1 = 0i64;
        for b in 1..i {
            e1 += if b <= m {
                t.alpha[b - 1] as i64
            } else {
                t.mu[b - 1 - m] as i64
            };
        }
        let row = dst.index[&target];
        entries.push((row, col, spec.q_pow(e1)));
    }
    SparseMatrix::new(dst.dim(), src.dim(), entries)
}

/// The `q⁻¹`-commutation `∂_j∂_i = q⁻¹ ∂_i∂_j` for `j > i` on `Ω^(s)`, plus
/// `∂_i² = 0` for odd `i`.
pub fn partial_ops_check(shape: &Shape, s: u64) -> Result<bool> {
    let spec = shape.spec();
    let total = shape.m + shape.n;
    let qinv = spec.q_pow(-1);
    let mats_s: Vec<SparseMatrix> = (1..=total)
        .map(|i| partial_op_matrix(shape, i, s))
        .collect();
    let lower = s.saturating_sub(1);
    let mats_lower: Vec<SparseMatrix> = (1..=total)
        .map(|i| partial_op_matrix(shape, i, lower))
        .collect();
    if s == 0 {
        return Ok(true);
    }
    for i in 1..=total {
        for j in (i + 1)..=total {
            let ji = mats_lower[j - 1].matmul(&mats_s[i - 1]);
            let ij = mats_lower[i - 1].matmul(&mats_s[j - 1]).scale(&qinv);
            if ji != ij {
                return Ok(false);
            }
        }
    }
    for i in (shape.m + 1)..=total {
        if !mats_lower[i - 1].matmul(&mats_s[i - 1]).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Weight blocks
// ---------------------------------------------------------------------------

/// One super-weight block of the complex at one differential degree.
#[derive(Debug, Clone)]
pub struct DeRhamBlock {
    pub weight: SuperWeight,
    pub s: u64,
    pub basis: Vec<DFormIndex>,
    pub d_in: SparseMatrix,
    pub d_out: SparseMatrix,
}

impl DeRhamBlock {
    /// The block complex really is a complex.
    pub fn verify(&self) -> bool {
        self.d_out.matmul(&self.d_in).is_zero()
    }
}

/// Forms of one super-weight organized by differential degree, built directly
/// from the free-slot structure: pinned even slots carry a forced ξ-bit, zero
/// slots carry none, every other slot contributes one binary choice. Inside a
/// block the ξ-word determines the form; bases are ξ-word lexicographic.
pub fn block_forms(shape: &Shape, lambda: &SuperWeight) -> Vec<Vec<DFormIndex>> {
    let m = shape.m;
    let total = m + shape.n;
    let cap = shape.r * shape.ell;
    let mut per_degree: Vec<Vec<DFormIndex>> = vec![Vec::new(); total + 2];
    if lambda.even.iter().any(|&a| a > cap) {
        return per_degree;
    }
    for s in 0..=total as u64 {
        for xi in xi_words(total, s) {
            let mut ok = true;
            let mut alpha = Vec::with_capacity(m);
            for i in 0..m {
                let need = lambda.even[i] as i64 - xi.bits[i] as i64;
                if need < 0 || need as u64 > cap - 1 {
                    ok = false;
                    break;
                }
                alpha.push(need as u64);
            }
            if !ok {
                continue;
            }
            let mut mu = Vec::with_capacity(shape.n);
            for j in 0..shape.n {
                mu.push((lambda.odd[j] + xi.bits[m + j]) % 2);
            }
            per_degree[s as usize].push(DFormIndex {
                coeff: SuperTuple::new(alpha, mu),
                xi,
            });
        }
    }
    per_degree
}

/// Partition of the enumerated degree-`s` basis into super-weight blocks,
/// with each block dimension checked against the closed form
/// `C(m+n−k_λ−h⁰_λ, s−k_λ)` and the nonemptiness window `k_λ ≤ s ≤ m+n−h⁰_λ`.
pub fn weight_blocks(shape: &Shape, s: u64) -> Result<Vec<DeRhamBlock>> {
    let mut grouped: BTreeMap<SuperWeight, Vec<DFormIndex>> = BTreeMap::new();
    for form in dform_basis(shape, s) {
        let w = SuperWeight::of_form(&form, shape.m);
        grouped.entry(w).or_default().push(form);
    }
    let mut out = Vec::new();
    for (weight, mut basis) in grouped {
        basis.sort_by_key(|f| f.xi.word());
        let expected = block_dim_formula(shape, &weight, s);
        if Int::from(basis.len()) != expected {
            return Err(Error::CertificationFailed(format!(
                "weight block {weight:?} at degree {s} has dim {}, expected {expected}",
                basis.len()
            )));
        }
        let direct = block_forms(shape, &weight);
        if direct[s as usize].len() != basis.len() {
            return Err(Error::CertificationFailed(
                "direct block construction disagrees with enumeration".into(),
            ));
        }
        let d_in = if s == 0 {
            SparseMatrix::zero(basis.len(), 0)
        } else {
            block_matrix(shape, &direct, s - 1, s)
        };
        let d_out = block_matrix(shape, &direct, s, s + 1);
        out.push(DeRhamBlock {
            weight,
            s,
            basis,
            d_in,
            d_out,
        });
    }
    Ok(out)
}

/// `C(m+n−k_λ−h⁰_λ, s−k_λ)`, zero outside the admissible window.
pub fn block_dim_formula(shape: &Shape, lambda: &SuperWeight, s: u64) -> Int {
    let k = lambda.k_lambda(shape) as i64;
    let h0 = lambda.h0_lambda() as i64;
    let mn = (shape.m + shape.n) as i64;
    binom(mn - k - h0, s as i64 - k)
}

fn block_matrix(shape: &Shape, per_degree: &[Vec<DFormIndex>], from: u64, to: u64) -> SparseMatrix {
    let src = per_degree.get(from as usize).cloned().unwrap_or_default();
    let dst = per_degree.get(to as usize).cloned().unwrap_or_default();
    let index: BTreeMap<&DFormIndex, usize> =
        dst.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut entries = Vec::new();
    for (col, form) in src.iter().enumerate() {
        for (target, coeff) in d_term(shape, form) {
            let row = *index
                .get(&target)
                .expect("differential preserves the weight block");
            entries.push((row, col, coeff));
        }
    }
    SparseMatrix::new(dst.len(), src.len(), entries)
}

// ---------------------------------------------------------------------------
// Critical weights and cohomology
// ---------------------------------------------------------------------------

/// Distinct critical super-weights with a nonempty block in degree `s`.
pub fn critical_weights(shape: &Shape, s: u64) -> Vec<SuperWeight> {
    let m = shape.m;
    let n = shape.n as u64;
    let cap = shape.r * shape.ell;
    let mut out = Vec::new();
    let k_lo = s.saturating_sub(n);
    for k in k_lo..=s.min(m as u64) {
        for subset in subsets_of_size(m, k as usize) {
            let mut even = vec![0u64; m];
            for i in subset {
                even[i] = cap;
            }
            out.push(SuperWeight {
                even,
                odd: vec![0; shape.n],
            });
        }
    }
    out
}

/// The representative critical forms of degree `s`:
/// `x((rℓ−1)Σε_S | τ) ξ(Σε_S | τ)` over even subsets `S` and odd subsets `τ`
/// with `|S| + |τ| = s`. Their count is `C(m+n, s)`.
pub fn critical_forms(shape: &Shape, s: u64) -> Vec<DFormIndex> {
    let m = shape.m;
    let n = shape.n;
    let cap = shape.r * shape.ell;
    let mut out = Vec::new();
    for k in 0..=s.min(m as u64) {
        let t = s - k;
        if t > n as u64 {
            continue;
        }
        for even_set in subsets_of_size(m, k as usize) {
            for odd_set in subsets_of_size(n, t as usize) {
                let mut alpha = vec![0u64; m];
                let mut bits = vec![0u8; m + n];
                for &i in &even_set {
                    alpha[i] = cap - 1;
                    bits[i] = 1;
                }
                let mut mu = vec![0u8; n];
                for &j in &odd_set {
                    mu[j] = 1;
                    bits[m + j] = 1;
                }
                out.push(DFormIndex {
                    coeff: SuperTuple::new(alpha, mu),
                    xi: XiIndex { bits },
                });
            }
        }
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyRow {
    pub s: u64,
    pub dim_total: u64,
    pub rank_d: u64,
    pub dim_h: u64,
    pub expected: u64,
    pub critical_weights: u64,
    pub critical_forms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyTable {
    pub m: usize,
    pub n: usize,
    pub ell: u64,
    pub r: u64,
    pub rows: Vec<CohomologyRow>,
    pub critical_form_reps: Vec<Vec<String>>,
    pub non_critical_exact: bool,
    pub critical_blocks_inert: bool,
    pub critical_contributions_match: bool,
    pub rank_bound_ok: bool,
    pub betti_ok: bool,
    pub passed: bool,
}

fn matrix_rank(m: &SparseMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let mut red = Reducer::new(m.nrows);
    for col in 0..m.ncols {
        let v: SVec = m
            .column(col)
            .into_iter()
            .map(|(r, c)| (r, c.clone()))
            .collect();
        if !v.is_empty() {
            red.insert(&v);
        }
    }
    red.rank()
}

/// Exact cohomology of the truncated complex, computed per super-weight
/// block. Non-critical blocks must be exact; the differential must vanish on
/// critical blocks, whose forms each contribute one dimension; the headline
/// Betti number in degree `s` is `C(m+n, s)`.
pub fn cohomology(shape: &Shape) -> Result<CohomologyTable> {
    let total = shape.m + shape.n;
    let cap = shape.r * shape.ell;
    // every occurring super-weight lies in the box `[0, rℓ]^m × {0,1}^n`
    let mut weights: Vec<SuperWeight> = Vec::new();
    {
        let mut even = vec![0u64; shape.m];
        loop {
            let mut odd = vec![0u8; shape.n];
            loop {
                weights.push(SuperWeight {
                    even: even.clone(),
                    odd: odd.clone(),
                });
                let mut j = 0;
                while j < shape.n && odd[j] == 1 {
                    odd[j] = 0;
                    j += 1;
                }
                if j == shape.n {
                    break;
                }
                odd[j] = 1;
            }
            let mut i = 0;
            while i < shape.m && even[i] == cap {
                even[i] = 0;
                i += 1;
            }
            if i == shape.m {
                break;
            }
            even[i] += 1;
        }
    }

    let mut dim_total = vec![0u64; total + 1];
    let mut rank_total = vec![0u64; total + 1];
    let mut h_total = vec![0u64; total + 1];
    let mut critical_weight_count = vec![0u64; total + 1];
    let mut critical_form_count = vec![0u64; total + 1];
    let mut non_critical_exact = true;
    let mut critical_blocks_inert = true;
    let mut critical_contributions_match = true;
    let mut rank_bound_ok = true;

    for lambda in &weights {
        let per_degree = block_forms(shape, lambda);
        if per_degree.iter().all(|b| b.is_empty()) {
            continue;
        }
        let critical = lambda.is_critical(shape);
        let k = lambda.k_lambda(shape) as i64;
        let h0 = lambda.h0_lambda() as i64;
        let mut prev_rank = 0u64;
        for s in 0..=total as u64 {
            let dim_s = per_degree[s as usize].len() as u64;
            let d_s = block_matrix(shape, &per_degree, s, s + 1);
            let rank_s = matrix_rank(&d_s) as u64;
            let h = dim_s - rank_s - prev_rank;
            dim_total[s as usize] += dim_s;
            rank_total[s as usize] += rank_s;
            h_total[s as usize] += h;
            if critical {
                if dim_s > 0 {
                    critical_weight_count[s as usize] += 1;
                }
                critical_form_count[s as usize] += dim_s;
                if rank_s != 0 {
                    critical_blocks_inert = false;
                }
                if h != dim_s {
                    critical_contributions_match = false;
                }
            } else {
                if h != 0 {
                    non_critical_exact = false;
                }
                if dim_s > 0 {
                    let bound = binom((shape.m + shape.n) as i64 - k - h0 - 1, s as i64 - k);
                    if Int::from(rank_s) < bound {
                        rank_bound_ok = false;
                    }
                }
            }
            prev_rank = rank_s;
        }
    }

    let mut rows = Vec::new();
    let mut critical_form_reps = Vec::new();
    let mut betti_ok = true;
    let omega_dim: u64 = cap.pow(shape.m as u32) * 2u64.pow(shape.n as u32);
    for s in 0..=total as u64 {
        let expected = binomial_u64(total as u64, s);
        if h_total[s as usize] != expected {
            betti_ok = false;
        }
        let reps = critical_forms(shape, s);
        if reps.len() as u64 != critical_form_count[s as usize] || reps.len() as u64 != expected {
            critical_contributions_match = false;
        }
        critical_form_reps.push(reps.iter().map(|f| f.display()).collect());
        // double counting: the blocks partition Ω(m|n,r) ⊗ ⊓^(s)
        if dim_total[s as usize] != omega_dim * expected {
            return Err(Error::CertificationFailed(format!(
                "degree {s} block dimensions sum to {} instead of {}",
                dim_total[s as usize],
                omega_dim * expected
            )));
        }
        rows.push(CohomologyRow {
            s,
            dim_total: dim_total[s as usize],
            rank_d: rank_total[s as usize],
            dim_h: h_total[s as usize],
            expected,
            critical_weights: critical_weight_count[s as usize],
            critical_forms: critical_form_count[s as usize],
        });
    }
    let passed = non_critical_exact
        && critical_blocks_inert
        && critical_contributions_match
        && rank_bound_ok
        && betti_ok;
    Ok(CohomologyTable {
        m: shape.m,
        n: shape.n,
        ell: shape.ell,
        r: shape.r,
        rows,
        critical_form_reps,
        non_critical_exact,
        critical_blocks_inert,
        critical_contributions_match,
        rank_bound_ok,
        betti_ok,
        passed,
    })
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    binom(n as i64, k as i64).to_string().parse().unwrap()
}

/// CSV rendering with columns
/// `s, dim_d, rank_d, dim_h, expected, critical_weights`.
pub fn cohomology_csv(table: &CohomologyTable) -> String {
    let mut out = String::from("s,dim_d,rank_d,dim_h,expected,critical_weights\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.s, r.dim_total, r.rank_d, r.dim_h, r.expected, r.critical_weights
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Per-weight acyclicity (the untruncated complex through finite blocks)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct PoincareDegree {
    pub s: u64,
    pub dim: u64,
    pub rank: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoincareReport {
    pub lambda: SuperWeight,
    pub r_used: u64,
    pub degrees: Vec<PoincareDegree>,
    pub exact: bool,
}

/// Acyclicity of the untruncated complex at one nonzero weight, accessed
/// through the finite block of a truncation chosen so `rℓ > |α| + m + n`
/// (which makes the block equal to its untruncated counterpart, with no
/// pinned slot).
pub fn poincare_check(m: usize, n: usize, ell: u64, lambda: &SuperWeight) -> Result<PoincareReport> {
    if lambda.is_zero() {
        return Err(Error::InvalidConfig(
            "the zero weight carries the scalar cohomology; acyclicity needs a nonzero weight"
                .into(),
        ));
    }
    if lambda.even.len() != m || lambda.odd.len() != n {
        return Err(Error::ShapeMismatch("weight length".into()));
    }
    let alpha_total: u64 = lambda.even.iter().sum();
    let need = alpha_total + (m + n) as u64 + 1;
    let r = need.div_ceil(ell).max(1);
    let shape = Shape::new(m, n, ell, r)?;
    debug_assert!(r * ell > alpha_total + (m + n) as u64);
    debug_assert_eq!(lambda.k_lambda(&shape), 0);
    let per_degree = block_forms(&shape, lambda);
    let total = m + n;
    let mut degrees = Vec::new();
    let mut exact = true;
    let mut prev_rank = 0u64;
    for s in 0..=total as u64 {
        let dim_s = per_degree[s as usize].len() as u64;
        let d_s = block_matrix(&shape, &per_degree, s, s + 1);
        let rank_s = matrix_rank(&d_s) as u64;
        if dim_s - rank_s != prev_rank {
            exact = false;
        }
        degrees.push(PoincareDegree {
            s,
            dim: dim_s,
            rank: rank_s,
        });
        prev_rank = rank_s;
    }
    Ok(PoincareReport {
        lambda: lambda.clone(),
        r_used: r,
        degrees,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(m: usize, n: usize, ell: u64, r: u64) -> Shape {
        Shape::new(m, n, ell, r).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let a = XiIndex {
            bits: vec![1, 0, 0],
        };
        assert!(wedge(&a, &a).is_none());
        // dξ_j ∧ dξ_i for j > i: one inversion, coefficient −q
        let j = XiIndex {
            bits: vec![0, 1, 0],
        };
        let i = XiIndex {
            bits: vec![1, 0, 0],
        };
        let (u, k) = wedge(&j, &i).unwrap();
        assert_eq!(u.bits, vec![1, 1, 0]);
        assert_eq!(k, 1);
        let (u2, k2) = wedge(&i, &j).unwrap();
        assert_eq!(u2.bits, vec![1, 1, 0]);
        assert_eq!(k2, 0);
    }

    #[test]
    fn wedge_inversion_count() {
        let a = XiIndex {
            bits: vec![0, 1, 1, 0],
        };
        let b = XiIndex {
            bits: vec![1, 0, 0, 1],
        };
        let (_, k) = wedge(&a, &b).unwrap();
        assert_eq!(k, 2); // slots 2 and 3 each pass slot 1
    }

    #[test]
    fn d_on_constants_and_generators() {
        let shape = sh(2, 1, 3, 1);
        let one = DFormIndex {
            coeff: SuperTuple::new(vec![0, 0], vec![0]),
            xi: XiIndex::empty(3),
        };
        assert!(d_term(&shape, &one).is_empty());
        // odd generator: d(x_3) = dξ_3 with coefficient 1
        let odd = DFormIndex {
            coeff: SuperTuple::new(vec![0, 0], vec![1]),
            xi: XiIndex::empty(3),
        };
        let out = d_term(&shape, &odd);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.xi.bits, vec![0, 0, 1]);
        assert!(out[0].1.is_one());
        // even generator x_1
        let even = DFormIndex {
            coeff: SuperTuple::new(vec![1, 0], vec![0]),
            xi: XiIndex::empty(3),
        };
        let out = d_term(&shape, &even);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.xi.bits, vec![1, 0, 0]);
        assert!(out[0].1.is_one());
    }

    #[test]
    fn top_degree_differential_vanishes() {
        let shape = sh(2, 1, 3, 1);
        let top = d_matrix(&shape, 3, None);
        assert!(top.is_zero());
        assert_eq!(top.nrows, 0);
    }

    #[test]
    fn complex_check_small() {
        let shape = sh(2, 1, 3, 1);
        let rep = complex_check(&shape).unwrap();
        assert!(rep.ok && rep.enlarged_ok, "witness: {:?}", rep.witness);
    }

    #[test]
    fn partial_ops_small() {
        let shape = sh(2, 1, 3, 1);
        for s in 0..=shape.top_degree() {
            assert!(partial_ops_check(&shape, s).unwrap(), "failed at s={s}");
        }
    }

    #[test]
    fn weight_blocks_small() {
        let shape = sh(2, 1, 3, 1);
        for s in 0..=3u64 {
            let blocks = weight_blocks(&shape, s).unwrap();
            let total: usize = blocks.iter().map(|b| b.basis.len()).sum();
            assert_eq!(total, dform_basis(&shape, s).len());
            for b in &blocks {
                assert!(b.verify(), "block {:?} fails d²=0", b.weight);
                for f in &b.basis {
                    assert_eq!(SuperWeight::of_form(f, shape.m), b.weight);
                }
            }
        }
    }

    #[test]
    fn block_dims_closed_form() {
        // λ = (1,0|0) at (2,1,3,1): dims over s are C(2, s): 1, 2, 1
        let shape = sh(2, 1, 3, 1);
        let lambda = SuperWeight {
            even: vec![1, 0],
            odd: vec![0],
        };
        let per = block_forms(&shape, &lambda);
        assert_eq!(per[0].len(), 1);
        assert_eq!(per[1].len(), 2);
        assert_eq!(per[2].len(), 1);
        assert_eq!(per[3].len(), 0);
        for s in 0..=3u64 {
            let expected = block_dim_formula(&shape, &lambda, s);
            assert_eq!(Int::from(per[s as usize].len()), expected);
        }
    }

    #[test]
    fn critical_weights_examples() {
        let shape = sh(2, 1, 3, 1);
        // at s = 1: (3,0|0), (0,3|0) and the zero weight (reached through the
        // paired x_i ⊗ dξ_i mechanism)
        let crit = critical_weights(&shape, 1);
        assert_eq!(crit.len(), 3);
        assert!(crit.iter().any(|w| w.is_zero()));
        assert!(crit
            .iter()
            .any(|w| w.even == vec![3, 0] && w.odd == vec![0]));
        let crit0 = critical_weights(&shape, 0);
        assert_eq!(crit0.len(), 1);
        assert!(crit0[0].is_zero());
        for s in 0..=3u64 {
            assert_eq!(critical_forms(&shape, s).len() as u64, binomial_u64(3, s));
        }
    }

    #[test]
    fn cohomology_smallest_shape() {
        let shape = sh(2, 1, 3, 1);
        let table = cohomology(&shape).unwrap();
        assert!(table.passed, "table: {table:?}");
        let dims: Vec<u64> = table.rows.iter().map(|r| r.dim_h).collect();
        assert_eq!(dims, vec![1, 3, 3, 1]);
    }

    #[test]
    fn poincare_small_weights() {
        // λ = (1,0|0) over (2,1,3): dims 1,2,1 and ranks 1,1
        let lambda = SuperWeight {
            even: vec![1, 0],
            odd: vec![0],
        };
        let rep = poincare_check(2, 1, 3, &lambda).unwrap();
        assert!(rep.exact);
        let dims: Vec<u64> = rep.degrees.iter().map(|d| d.dim).collect();
        assert_eq!(dims, vec![1, 2, 1, 0]);
        let ranks: Vec<u64> = rep.degrees.iter().map(|d| d.rank).collect();
        assert_eq!(ranks, vec![1, 1, 0, 0]);
        let lambda = SuperWeight {
            even: vec![2, 2],
            odd: vec![1],
        };
        let rep = poincare_check(2, 1, 3, &lambda).unwrap();
        assert!(rep.exact);
        let zero = SuperWeight {
            even: vec![0, 0],
            odd: vec![0],
        };
        assert!(poincare_check(2, 1, 3, &zero).is_err());
    }

    #[test]
    fn pure_even_and_single_even_edges() {
        // n = 0: pure even relation set, binomial cohomology in m slots
        let s20 = sh(2, 0, 3, 1);
        let rep = complex_check(&s20).unwrap();
        assert!(rep.ok && rep.enlarged_ok);
        for s in 0..=s20.top_degree() {
            assert!(partial_ops_check(&s20, s).unwrap());
        }
        let table = cohomology(&s20).unwrap();
        assert!(table.passed);
        let dims: Vec<u64> = table.rows.iter().map(|r| r.dim_h).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        // m = 1 is allowed on the de Rham surface
        let s11 = sh(1, 1, 3, 1);
        let table = cohomology(&s11).unwrap();
        assert!(table.passed);
        let dims: Vec<u64> = table.rows.iter().map(|r| r.dim_h).collect();
        assert_eq!(dims, vec![1, 2, 1]);
    }

    #[test]
    fn cohomology_at_characteristic_five() {
        let shape = sh(2, 2, 5, 1);
        let table = cohomology(&shape).unwrap();
        assert!(table.passed);
        let dims: Vec<u64> = table.rows.iter().map(|r| r.dim_h).collect();
        assert_eq!(dims, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn euler_characteristic_identity() {
        let shape = sh(2, 1, 3, 1);
        let table = cohomology(&shape).unwrap();
        let signed = |v: u64, s: u64| if s.is_multiple_of(2) { v as i64 } else { -(v as i64) };
        let lhs: i64 = table.rows.iter().map(|r| signed(r.dim_total, r.s)).sum();
        let rhs: i64 = table.rows.iter().map(|r| signed(r.dim_h, r.s)).sum();
        assert_eq!(lhs, rhs);
    }
}
