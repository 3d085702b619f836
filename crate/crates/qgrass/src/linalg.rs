//! Exact sparse linear algebra over the cyclotomic field: reduced bases,
//! rank, nullspace, subspace lattice operations, commutants, and the
//! characteristic-zero trace-form radical test for locality.
//!
//! Elimination is fraction-managed Gaussian elimination with deterministic
//! pivoting (first nonzero in column order), so every result is reproducible
//! bit for bit.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::scalars::{CycField, CycNum};
use crate::{Error, Result};

/// Sparse vector: sorted `(index, nonzero value)` pairs.
pub type SVec = Vec<(usize, CycNum)>;

pub fn svec_is_zero(v: &SVec) -> bool {
    v.is_empty()
}

pub fn svec_scale(v: &SVec, c: &CycNum) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, a)| (*i, a.mul(c))).collect()
}

/// `a + c·b`, dropping produced zeros.
pub fn svec_add_scaled(a: &SVec, c: &CycNum, b: &SVec) -> SVec {
    let mut out: SVec = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let val = b[j].1.mul(c);
            if !val.is_zero() {
                out.push((b[j].0, val));
            }
            j += 1;
        } else {
            let val = a[i].1.add(&b[j].1.mul(c));
            if !val.is_zero() {
                out.push((a[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn svec_from_dense(dense: &[CycNum]) -> SVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn svec_unit(i: usize, one: CycNum) -> SVec {
    vec![(i, one)]
}

// ---------------------------------------------------------------------------
// Incremental row reducer
// ---------------------------------------------------------------------------

/// Incrementally maintained reduced row-echelon basis.
#[derive(Debug, Clone)]
pub struct Reducer {
    pub ambient: usize,
    rows: Vec<SVec>,
    pivot_of_row: Vec<usize>,
    row_of_pivot: HashMap<usize, usize>,
}

impl Reducer {
    pub fn new(ambient: usize) -> Reducer {
        Reducer {
            ambient,
            rows: Vec::new(),
            pivot_of_row: Vec::new(),
            row_of_pivot: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce `v` against the current basis.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut cur = v.clone();
        loop {
            let mut hit = None;
            for (i, c) in &cur {
                if let Some(&row) = self.row_of_pivot.get(i) {
                    hit = Some((row, c.clone()));
                    break;
                }
            }
            match hit {
                None => return cur,
                Some((row, c)) => {
                    cur = svec_add_scaled(&cur, &c.neg(), &self.rows[row]);
                }
            }
        }
    }

    /// Insert a vector; returns the new pivot column if independent.
    pub fn insert(&mut self, v: &SVec) -> Option<usize> {
        let mut red = self.reduce(v);
        if red.is_empty() {
            return None;
        }
        // normalize leading coefficient to one
        let lead = red[0].1.clone();
        let pivot = red[0].0;
        if !lead.is_one() {
            let inv = lead.inv();
            red = svec_scale(&red, &inv);
        }
        // back-eliminate the new pivot from existing rows
        for row in &mut self.rows {
            if let Some(pos) = row.iter().position(|(i, _)| *i == pivot) {
                let c = row[pos].1.clone();
                *row = svec_add_scaled(row, &c.neg(), &red);
            }
        }
        self.rows.push(red);
        self.pivot_of_row.push(pivot);
        self.row_of_pivot.insert(pivot, self.rows.len() - 1);
        Some(pivot)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the row basis (rows in insertion order), if a
    /// member.
    pub fn coordinates(&self, v: &SVec) -> Option<Vec<CycNum>> {
        let mut coords = vec![None; self.rows.len()];
        let mut cur = v.clone();
        loop {
            let mut hit = None;
            for (i, c) in &cur {
                if let Some(&row) = self.row_of_pivot.get(i) {
                    hit = Some((row, c.clone()));
                    break;
                }
            }
            match hit {
                None => break,
                Some((row, c)) => {
                    coords[row] = Some(c.clone());
                    cur = svec_add_scaled(&cur, &c.neg(), &self.rows[row]);
                }
            }
        }
        if cur.is_empty() {
            Some(
                coords
                    .into_iter()
                    .map(|c| c.unwrap_or_else(|| self.zero_scalar()))
                    .collect(),
            )
        } else {
            None
        }
    }

    fn zero_scalar(&self) -> CycNum {
        let probe = self
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .next()
            .expect("coordinates on an empty basis");
        CycNum::zero(probe.1.field().clone())
    }

    /// Rows sorted by pivot column: the canonical reduced echelon basis.
    pub fn into_sorted_rows(mut self) -> Vec<SVec> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivot_of_row[i]);
        idx.into_iter()
            .map(|i| std::mem::take(&mut self.rows[i]))
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivot_of_row.clone();
        p.sort_unstable();
        p
    }
}

// ---------------------------------------------------------------------------
// Sparse matrices
// ---------------------------------------------------------------------------

/// Coordinate-list sparse matrix over the cyclotomic field. Entries are kept
/// sorted by `(col, row)` with no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    entries: Vec<(usize, usize, CycNum)>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize, mut entries: Vec<(usize, usize, CycNum)>) -> SparseMatrix {
        entries.retain(|(_, _, c)| !c.is_zero());
        for (r, c, _) in &entries {
            assert!(*r < nrows && *c < ncols, "entry out of range");
        }
        entries.sort_by_key(|(r, c, _)| (*c, *r));
        // merge duplicates
        let mut merged: Vec<(usize, usize, CycNum)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            if let Some(last) = merged.last_mut() {
                if last.0 == r && last.1 == c {
                    last.2 = last.2.add(&v);
                    continue;
                }
            }
            merged.push((r, c, v));
        }
        merged.retain(|(_, _, c)| !c.is_zero());
        SparseMatrix {
            nrows,
            ncols,
            entries: merged,
        }
    }

    pub fn zero(nrows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize, field: Arc<CycField>) -> SparseMatrix {
        let one = CycNum::one(field);
        SparseMatrix::new(n, n, (0..n).map(|i| (i, i, one.clone())).collect())
    }

    pub fn entries(&self) -> &[(usize, usize, CycNum)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::new(
            self.ncols,
            self.nrows,
            self.entries
                .iter()
                .map(|(r, c, v)| (*c, *r, v.clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        SparseMatrix::new(self.nrows, self.ncols, e)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale_neg())
    }

    fn scale_neg(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .map(|(r, c, v)| (*r, *c, v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &CycNum) -> SparseMatrix {
        SparseMatrix::new(
            self.nrows,
            self.ncols,
            self.entries
                .iter()
                .map(|(r, c, v)| (*r, *c, v.mul(k)))
                .collect(),
        )
    }

    /// Entries of one column, as `(row, value)` pairs.
    pub fn column(&self, col: usize) -> Vec<(usize, &CycNum)> {
        let start = self.entries.partition_point(|(_, c, _)| *c < col);
        let mut out = Vec::new();
        for (r, c, v) in &self.entries[start..] {
            if *c != col {
                break;
            }
            out.push((*r, v));
        }
        out
    }

    /// `y = A·x` with `x` indexed by columns.
    pub fn apply(&self, x: &SVec) -> SVec {
        let mut acc: HashMap<usize, CycNum> = HashMap::new();
        for (i, xv) in x {
            for (r, av) in self.column(*i) {
                let t = av.mul(xv);
                if t.is_zero() {
                    continue;
                }
                acc.entry(r)
                    .and_modify(|e| *e = e.add(&t))
                    .or_insert(t);
            }
        }
        let mut out: SVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn matmul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "matmul dimension mismatch");
        let mut entries = Vec::new();
        for col in 0..other.ncols {
            let x: SVec = other
                .column(col)
                .into_iter()
                .map(|(r, v)| (r, v.clone()))
                .collect();
            for (r, v) in self.apply(&x) {
                entries.push((r, col, v));
            }
        }
        SparseMatrix::new(self.nrows, other.ncols, entries)
    }

    pub fn pow(&self, k: u32, field: Arc<CycField>) -> SparseMatrix {
        assert_eq!(self.nrows, self.ncols);
        let mut acc = SparseMatrix::identity(self.nrows, field);
        for _ in 0..k {
            acc = self.matmul(&acc);
        }
        acc
    }

    /// Rows as sparse vectors.
    pub fn rows(&self) -> Vec<SVec> {
        let mut rows: Vec<SVec> = vec![Vec::new(); self.nrows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        for row in &mut rows {
            row.sort_by_key(|(i, _)| *i);
        }
        rows
    }

    /// Diagonal values if the matrix is diagonal.
    pub fn as_diagonal(&self) -> Option<Vec<Option<CycNum>>> {
        let mut diag = vec![None; self.nrows.min(self.ncols)];
        for (r, c, v) in &self.entries {
            if r != c {
                return None;
            }
            diag[*r] = Some(v.clone());
        }
        Some(diag)
    }

    /// Coordinate-triplet JSON `{"rows":…,"cols":…,"entries":[[i,j,"…"],…]}`
    /// with exact scalar strings.
    pub fn to_coordinate_json(&self) -> Value {
        let mut sorted = self.entries.clone();
        sorted.sort_by_key(|(r, c, _)| (*r, *c));
        json!({
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": sorted
                .iter()
                .map(|(r, c, v)| json!([r, c, v.to_canonical_string()]))
                .collect::<Vec<_>>(),
        })
    }
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// Row-reduced exact subspace basis with leading ones; rows sorted by pivot.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    pub ambient_dim: usize,
    rref_rows: Vec<SVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            rref_rows: Vec::new(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[SVec]) -> Subspace {
        let mut red = Reducer::new(ambient_dim);
        for v in vectors {
            red.insert(v);
        }
        Subspace {
            ambient_dim,
            rref_rows: red.into_sorted_rows(),
        }
    }

    pub fn full(ambient_dim: usize, field: Arc<CycField>) -> Subspace {
        let one = CycNum::one(field);
        Subspace {
            ambient_dim,
            rref_rows: (0..ambient_dim).map(|i| svec_unit(i, one.clone())).collect(),
        }
    }

    /// Span of a set of coordinate axes.
    pub fn coordinate_span(ambient_dim: usize, coords: &[usize], field: Arc<CycField>) -> Subspace {
        let one = CycNum::one(field);
        let mut sorted = coords.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Subspace {
            ambient_dim,
            rref_rows: sorted.into_iter().map(|i| svec_unit(i, one.clone())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rref_rows.len()
    }

    pub fn rows(&self) -> &[SVec] {
        &self.rref_rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rref_rows.iter().map(|r| r[0].0).collect()
    }

    pub fn reducer(&self) -> Reducer {
        let mut red = Reducer::new(self.ambient_dim);
        for row in &self.rref_rows {
            red.insert(row);
        }
        red
    }

    pub fn member(&self, v: &SVec) -> bool {
        self.reducer().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let red = self.reducer();
        other.rref_rows.iter().all(|r| red.contains(r))
    }

    /// True if this space is spanned by coordinate axes; returns them.
    pub fn coordinate_support(&self) -> Option<Vec<usize>> {
        let mut coords = Vec::with_capacity(self.rref_rows.len());
        for row in &self.rref_rows {
            if row.len() != 1 || !row[0].1.is_one() {
                return None;
            }
            coords.push(row[0].0);
        }
        Some(coords)
    }
}

/// Rank by row reduction.
pub fn rank(a: &SparseMatrix) -> usize {
    let mut red = Reducer::new(a.ncols);
    for row in a.rows() {
        red.insert(&row);
    }
    red.rank()
}

/// Exact kernel `{x : A·x = 0}`.
pub fn nullspace(a: &SparseMatrix, field: Arc<CycField>) -> Subspace {
    let mut red = Reducer::new(a.ncols);
    for row in a.rows() {
        red.insert(&row);
    }
    let rows = red.into_sorted_rows();
    let pivot_set: std::collections::HashSet<usize> = rows.iter().map(|r| r[0].0).collect();
    let one = CycNum::one(field);
    let mut basis: Vec<SVec> = Vec::new();
    for f in 0..a.ncols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v: SVec = vec![(f, one.clone())];
        for row in &rows {
            if let Some(pos) = row.iter().position(|(i, _)| *i == f) {
                let coeff = row[pos].1.neg();
                v.push((row[0].0, coeff));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        basis.push(v);
    }
    Subspace::from_vectors(a.ncols, &basis)
}

/// Column space.
pub fn image(a: &SparseMatrix) -> Subspace {
    let cols: Vec<SVec> = (0..a.ncols)
        .map(|c| {
            a.column(c)
                .into_iter()
                .map(|(r, v)| (r, v.clone()))
                .collect()
        })
        .collect();
    Subspace::from_vectors(a.nrows, &cols)
}

pub fn sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    if u.ambient_dim != v.ambient_dim {
        return Err(Error::DimensionMismatch("subspace sum ambient".into()));
    }
    let mut red = u.reducer();
    for row in v.rows() {
        red.insert(row);
    }
    Ok(Subspace {
        ambient_dim: u.ambient_dim,
        rref_rows: red.into_sorted_rows(),
    })
}

/// Intersection by the Zassenhaus block trick.
pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    if u.ambient_dim != v.ambient_dim {
        return Err(Error::DimensionMismatch("subspace intersect ambient".into()));
    }
    let n = u.ambient_dim;
    let mut red = Reducer::new(2 * n);
    for row in u.rows() {
        let mut doubled: SVec = row.clone();
        doubled.extend(row.iter().map(|(i, c)| (i + n, c.clone())));
        doubled.sort_by_key(|(i, _)| *i);
        red.insert(&doubled);
    }
    for row in v.rows() {
        red.insert(row); // right half zero
    }
    let mut basis: Vec<SVec> = Vec::new();
    for row in red.into_sorted_rows() {
        if row.iter().all(|(i, _)| *i >= n) {
            basis.push(row.into_iter().map(|(i, c)| (i - n, c)).collect());
        }
    }
    Ok(Subspace::from_vectors(n, &basis))
}

pub fn quotient_dim(u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.ambient_dim != v.ambient_dim {
        return Err(Error::DimensionMismatch("quotient ambient".into()));
    }
    if !u.contains_subspace(v) {
        return Err(Error::DimensionMismatch(
            "quotient denominator is not a subspace of the numerator".into(),
        ));
    }
    Ok(u.dim() - v.dim())
}

// ---------------------------------------------------------------------------
// Commutant and locality
// ---------------------------------------------------------------------------

/// Basis of the intertwiner space `{X : X·Aᵢ = Bᵢ·X for all i}` between a
/// source action (the `Aᵢ`, size `da`) and a target action (the `Bᵢ`, size
/// `db`); `X` is `db × da`. Positions where both paired members are diagonal
/// confine the unknown support to equal-eigenvalue index pairs; every other
/// pair contributes Sylvester equations solved exactly.
pub fn intertwiner_basis(
    a_mats: &[SparseMatrix],
    b_mats: &[SparseMatrix],
    da: usize,
    db: usize,
    field: Arc<CycField>,
) -> Result<Vec<SparseMatrix>> {
    if a_mats.len() != b_mats.len() {
        return Err(Error::DimensionMismatch(
            "intertwiner actions of different generator counts".into(),
        ));
    }
    for m in a_mats {
        if m.nrows != da || m.ncols != da {
            return Err(Error::DimensionMismatch("intertwiner source size".into()));
        }
    }
    for m in b_mats {
        if m.nrows != db || m.ncols != db {
            return Err(Error::DimensionMismatch("intertwiner target size".into()));
        }
    }
    let zero = CycNum::zero(field.clone());
    // eigenvalue signatures over positions where both sides are diagonal
    let mut signatures_src: Vec<Vec<CycNum>> = vec![Vec::new(); da];
    let mut signatures_dst: Vec<Vec<CycNum>> = vec![Vec::new(); db];
    let mut sylvester: Vec<(&SparseMatrix, &SparseMatrix)> = Vec::new();
    for (a, b) in a_mats.iter().zip(b_mats) {
        match (a.as_diagonal(), b.as_diagonal()) {
            (Some(da_diag), Some(db_diag)) => {
                for i in 0..da {
                    signatures_src[i].push(da_diag[i].clone().unwrap_or_else(|| zero.clone()));
                }
                for i in 0..db {
                    signatures_dst[i].push(db_diag[i].clone().unwrap_or_else(|| zero.clone()));
                }
            }
            _ => sylvester.push((a, b)),
        }
    }
    // bucket source indices by signature, pair each target index with its bucket
    let mut buckets: Vec<(Vec<CycNum>, Vec<usize>)> = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for k in 0..da {
        match buckets.iter_mut().find(|(sig, _)| *sig == signatures_src[k]) {
            Some((_, list)) => list.push(k),
            None => buckets.push((signatures_src[k].clone(), vec![k])),
        }
    }
    // unknowns: (r ∈ target, k ∈ source) with matching diagonal signatures
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut unknown_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut src_partner: Vec<Vec<usize>> = vec![Vec::new(); da];
    let mut dst_partner: Vec<Vec<usize>> = vec![Vec::new(); db];
    for r in 0..db {
        let matching = buckets
            .iter()
            .find(|(sig, _)| *sig == signatures_dst[r])
            .map(|(_, list)| list.clone())
            .unwrap_or_default();
        for k in matching {
            unknown_id.insert((r, k), unknowns.len());
            unknowns.push((r, k));
            src_partner[k].push(r);
            dst_partner[r].push(k);
        }
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let mut red = Reducer::new(unknowns.len());
    for (a, b) in &sylvester {
        // equation (r, c): Σ_k X[r,k]·A[k,c] − B[r,k]·X[k,c] = 0
        let mut rows: HashMap<(usize, usize), SVec> = HashMap::new();
        for (k, c, val) in a.entries() {
            for &r in &src_partner[*k] {
                let uid = unknown_id[&(r, *k)];
                rows.entry((r, *c)).or_default().push((uid, val.clone()));
            }
        }
        for (r, k, val) in b.entries() {
            for &c in &dst_partner[*k] {
                let uid = unknown_id[&(*k, c)];
                rows.entry((*r, c)).or_default().push((uid, val.neg()));
            }
        }
        let mut keys: Vec<(usize, usize)> = rows.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let mut row = rows.remove(&key).unwrap();
            row.sort_by_key(|(i, _)| *i);
            let mut merged: SVec = Vec::with_capacity(row.len());
            for (i, v) in row {
                if let Some(last) = merged.last_mut() {
                    if last.0 == i {
                        last.1 = last.1.add(&v);
                        continue;
                    }
                }
                merged.push((i, v));
            }
            merged.retain(|(_, v)| !v.is_zero());
            red.insert(&merged);
        }
    }
    let constraint_rows = red.into_sorted_rows();
    let constraints = SparseMatrix::new(
        constraint_rows.len().max(1),
        unknowns.len(),
        constraint_rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone())))
            .collect(),
    );
    let kernel = if constraints.is_zero() {
        Subspace::full(unknowns.len(), field.clone())
    } else {
        nullspace(&constraints, field.clone())
    };
    let mut basis = Vec::new();
    for vec in kernel.rows() {
        let entries: Vec<(usize, usize, CycNum)> = vec
            .iter()
            .map(|(uid, v)| {
                let (r, k) = unknowns[*uid];
                (r, k, v.clone())
            })
            .collect();
        basis.push(SparseMatrix::new(db, da, entries));
    }
    Ok(basis)
}

/// Basis of `{X : X·Mᵢ = Mᵢ·X for all i}`: the intertwiner space of an
/// action with itself.
pub fn commutant(mats: &[SparseMatrix], d: usize, field: Arc<CycField>) -> Result<Vec<SparseMatrix>> {
    for m in mats {
        if m.nrows != d || m.ncols != d {
            return Err(Error::DimensionMismatch(
                "commutant inputs must be square of equal size".into(),
            ));
        }
    }
    intertwiner_basis(mats, mats, d, d, field)
}

fn trace_product(a: &SparseMatrix, b: &SparseMatrix) -> CycNum {
    let mut bmap: HashMap<(usize, usize), &CycNum> = HashMap::new();
    for (r, c, v) in b.entries() {
        bmap.insert((*r, *c), v);
    }
    let probe = a
        .entries()
        .first()
        .or_else(|| b.entries().first())
        .expect("trace of structurally zero matrices");
    let mut acc = CycNum::zero(probe.2.field().clone());
    for (r, c, v) in a.entries() {
        if let Some(w) = bmap.get(&(*c, *r)) {
            acc = acc.add(&v.mul(w));
        }
    }
    acc
}

/// Locality of the unital matrix algebra spanned by `basis`: completes the
/// span multiplicatively (error if that runs away), then tests
/// `dim(E / rad E) = 1` with `rad E` the radical of the trace form — a valid
/// criterion in characteristic zero.
pub fn is_local_algebra(basis: &[SparseMatrix], d: usize, field: Arc<CycField>) -> Result<bool> {
    let ident = SparseMatrix::identity(d, field.clone());
    let flatten = |m: &SparseMatrix| -> SVec {
        let mut v: SVec = m
            .entries()
            .iter()
            .map(|(r, c, val)| (r * d + c, val.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let mut span = Reducer::new(d * d);
    let mut reps: Vec<SparseMatrix> = Vec::new();
    let enqueue = |m: SparseMatrix, span: &mut Reducer, reps: &mut Vec<SparseMatrix>| {
        if span.insert(&flatten(&m)).is_some() {
            reps.push(m);
        }
    };
    enqueue(ident, &mut span, &mut reps);
    for m in basis {
        if m.nrows != d || m.ncols != d {
            return Err(Error::DimensionMismatch("is_local_algebra inputs".into()));
        }
        enqueue(m.clone(), &mut span, &mut reps);
    }
    // multiplicative completion
    let mut frontier = 0usize;
    while frontier < reps.len() {
        if reps.len() > d * d {
            return Err(Error::CertificationFailed(
                "algebra completion exceeded the ambient matrix algebra".into(),
            ));
        }
        let upto = reps.len();
        let mut new_mats = Vec::new();
        for i in 0..upto {
            for j in frontier..upto {
                new_mats.push(reps[i].matmul(&reps[j]));
                if i >= frontier {
                    continue;
                }
                new_mats.push(reps[j].matmul(&reps[i]));
            }
        }
        frontier = upto;
        for m in new_mats {
            enqueue(m, &mut span, &mut reps);
        }
    }
    // Gram matrix of the trace form on the closed basis.
    let k = reps.len();
    let mut gram_entries = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let t = trace_product(&reps[i], &reps[j]);
            if !t.is_zero() {
                gram_entries.push((i, j, t));
            }
        }
    }
    let gram = SparseMatrix::new(k, k, gram_entries);
    let semisimple_dim = rank(&gram);
    Ok(semisimple_dim == 1)
}
