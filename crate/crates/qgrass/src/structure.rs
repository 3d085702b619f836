//! Module-structure analysis of the graded pieces `Ω_q^{(s)}(m|n, r)`:
//! cyclic submodules, the energy-grade filtration, socle identification and
//! certification, Loewy layers, indecomposability and rigidity witnesses, and
//! the submodule inclusion net.
//!
//! Because every generator maps a basis monomial to at most one basis
//! monomial, the cyclic closure of a monomial is the span of a reachable set
//! of monomials; those closures are computed by graph search and only
//! closures of genuinely mixed vectors fall back to exact elimination.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::linalg::{
    commutant, intersect, intertwiner_basis, is_local_algebra, nullspace, sum, svec_add_scaled,
    svec_unit, Reducer, SVec, SparseMatrix, Subspace,
};
use crate::omega::{action_matrices, restricted_dim_formula, ActionMatrices, GradedPiece};
use crate::scalars::CycNum;
use crate::superindex::{
    edeg, edeg_vector, energy_bounds, grade_representative, grade_tuple_count_formula,
    grade_tuples, EnergyVector, Shape, SuperTuple,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Module views (pieces and their quotients)
// ---------------------------------------------------------------------------

/// A finite-dimensional module presented by labelled coordinates and
/// generator matrices: either a graded piece or an iterated quotient of one.
#[derive(Debug, Clone)]
pub struct ModuleView {
    pub shape: Shape,
    pub s: u64,
    pub labels: Vec<SuperTuple>,
    pub e: Vec<SparseMatrix>,
    pub f: Vec<SparseMatrix>,
    pub k: Vec<SparseMatrix>,
    pub kinv: Vec<SparseMatrix>,
}

impl ModuleView {
    pub fn from_piece(shape: Shape, s: u64) -> ModuleView {
        let piece = GradedPiece::new(shape, s);
        let am = action_matrices(&piece);
        ModuleView::from_action(piece, am)
    }

    pub fn from_action(piece: GradedPiece, am: ActionMatrices) -> ModuleView {
        ModuleView {
            shape: piece.shape,
            s: piece.s,
            labels: piece.basis,
            e: am.e,
            f: am.f,
            k: am.k,
            kinv: am.kinv,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn all_mats(&self) -> Vec<&SparseMatrix> {
        self.e
            .iter()
            .chain(self.f.iter())
            .chain(self.k.iter())
            .chain(self.kinv.iter())
            .collect()
    }

    pub fn ef_mats(&self) -> Vec<&SparseMatrix> {
        self.e.iter().chain(self.f.iter()).collect()
    }

    /// Energy grade of each coordinate's label.
    pub fn edeg_of(&self, i: usize) -> u64 {
        edeg(&self.labels[i], self.shape.ell)
    }

    pub fn min_edeg(&self) -> u64 {
        (0..self.dim()).map(|i| self.edeg_of(i)).min().unwrap_or(0)
    }

    pub fn max_edeg(&self) -> u64 {
        (0..self.dim()).map(|i| self.edeg_of(i)).max().unwrap_or(0)
    }

    /// True when every e/f column has at most one entry, so monomial
    /// reachability search computes cyclic closures.
    pub fn has_monomial_action(&self) -> bool {
        self.ef_mats().iter().all(|m| {
            let mut last_col = usize::MAX;
            for (_, c, _) in m.entries() {
                if *c == last_col {
                    return false;
                }
                last_col = *c;
            }
            true
        })
    }

    /// Coordinate index of a labelled monomial.
    pub fn index_of(&self, t: &SuperTuple) -> Option<usize> {
        self.labels.iter().position(|l| l == t)
    }

    /// Partition of the coordinates into joint K-eigenvalue classes.
    pub fn weight_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = vec![(0..self.dim()).collect()];
        for km in self.k.iter() {
            let diag = km
                .as_diagonal()
                .expect("K matrices stay diagonal in every view");
            let mut next = Vec::new();
            for class in classes {
                let mut buckets: Vec<(Option<CycNum>, Vec<usize>)> = Vec::new();
                for i in class {
                    let val = diag[i].clone();
                    match buckets.iter_mut().find(|(v, _)| *v == val) {
                        Some((_, list)) => list.push(i),
                        None => buckets.push((val, vec![i])),
                    }
                }
                next.extend(buckets.into_iter().map(|(_, l)| l));
            }
            classes = next;
        }
        classes
    }

    /// Quotient by an invariant subspace: coordinates are the non-pivot
    /// columns, matrices act by reduce-and-restrict.
    pub fn quotient(&self, sub: &Subspace) -> Result<ModuleView> {
        if sub.ambient_dim != self.dim() {
            return Err(Error::DimensionMismatch("quotient ambient".into()));
        }
        let reducer = sub.reducer();
        let pivots: BTreeSet<usize> = sub.pivots().into_iter().collect();
        let free: Vec<usize> = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        let new_index: HashMap<usize, usize> =
            free.iter().enumerate().map(|(ni, &oi)| (oi, ni)).collect();
        let labels: Vec<SuperTuple> = free.iter().map(|&i| self.labels[i].clone()).collect();
        let project = |m: &SparseMatrix| -> SparseMatrix {
            let mut entries = Vec::new();
            for (new_col, &old_col) in free.iter().enumerate() {
                let col: SVec = m
                    .column(old_col)
                    .into_iter()
                    .map(|(r, v)| (r, v.clone()))
                    .collect();
                for (r, v) in reducer.reduce(&col) {
                    let nr = *new_index
                        .get(&r)
                        .expect("reduced vector supported on free coordinates");
                    entries.push((nr, new_col, v));
                }
            }
            SparseMatrix::new(free.len(), free.len(), entries)
        };
        Ok(ModuleView {
            shape: self.shape,
            s: self.s,
            labels,
            e: self.e.iter().map(&project).collect(),
            f: self.f.iter().map(&project).collect(),
            k: self.k.iter().map(&project).collect(),
            kinv: self.kinv.iter().map(&project).collect(),
        })
    }

    /// Restriction of every generator matrix to an invariant subspace, in the
    /// subspace's row basis.
    pub fn restrict_all(&self, space: &Subspace) -> Result<Vec<SparseMatrix>> {
        let reducer = space.reducer();
        let d = space.dim();
        let mut out = Vec::new();
        for m in self.all_mats() {
            let mut entries = Vec::new();
            for (col, row_vec) in space.rows().iter().enumerate() {
                let img = m.apply(row_vec);
                let coords = reducer.coordinates(&img).ok_or_else(|| {
                    Error::CertificationFailed(
                        "subspace is not invariant under the action".into(),
                    )
                })?;
                for (r, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((r, col, c));
                    }
                }
            }
            out.push(SparseMatrix::new(d, d, entries));
        }
        Ok(out)
    }
}

/// External direct sum of two views (used as a decomposable control).
pub fn direct_sum(a: &ModuleView, b: &ModuleView) -> ModuleView {
    assert_eq!(a.e.len(), b.e.len());
    let da = a.dim();
    let db = b.dim();
    let paste = |x: &SparseMatrix, y: &SparseMatrix| -> SparseMatrix {
        let mut entries: Vec<(usize, usize, CycNum)> = x.entries().to_vec();
        entries.extend(
            y.entries()
                .iter()
                .map(|(r, c, v)| (r + da, c + da, v.clone())),
        );
        SparseMatrix::new(da + db, da + db, entries)
    };
    let mut labels = a.labels.clone();
    labels.extend(b.labels.iter().cloned());
    ModuleView {
        shape: a.shape,
        s: a.s,
        labels,
        e: a.e.iter().zip(&b.e).map(|(x, y)| paste(x, y)).collect(),
        f: a.f.iter().zip(&b.f).map(|(x, y)| paste(x, y)).collect(),
        k: a.k.iter().zip(&b.k).map(|(x, y)| paste(x, y)).collect(),
        kinv: a
            .kinv
            .iter()
            .zip(&b.kinv)
            .map(|(x, y)| paste(x, y))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Cyclic closures
// ---------------------------------------------------------------------------

/// A cyclic submodule `U_q · v` with its generating vector.
#[derive(Debug, Clone)]
pub struct CyclicModule {
    pub generator: SVec,
    pub space: Subspace,
}

/// Reachable coordinate set of a single monomial under the e/f graph.
fn monomial_reach(view: &ModuleView, start: usize) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(i) = queue.pop_front() {
        for m in view.ef_mats() {
            for (r, _) in m.column(i) {
                if seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
    }
    seen
}

/// Smallest subspace containing `v` and closed under every generator matrix.
pub fn cyclic_closure(view: &ModuleView, v: &SVec) -> Result<CyclicModule> {
    if v.is_empty() {
        return Err(Error::InvalidConfig(
            "cyclic closure of the zero vector".into(),
        ));
    }
    if v.len() == 1 && view.has_monomial_action() {
        let reach = monomial_reach(view, v[0].0);
        let coords: Vec<usize> = reach.into_iter().collect();
        let space = Subspace::coordinate_span(view.dim(), &coords, view.shape.spec().field());
        return Ok(CyclicModule {
            generator: v.clone(),
            space,
        });
    }
    let mut red = Reducer::new(view.dim());
    let mut work: VecDeque<SVec> = VecDeque::new();
    if red.insert(v).is_some() {
        work.push_back(v.clone());
    }
    while let Some(w) = work.pop_front() {
        for m in view.all_mats() {
            let img = m.apply(&w);
            if img.is_empty() {
                continue;
            }
            let reduced = red.reduce(&img);
            if !reduced.is_empty() {
                red.insert(&reduced);
                work.push_back(reduced);
            }
        }
    }
    let rows = red.into_sorted_rows();
    Ok(CyclicModule {
        generator: v.clone(),
        space: Subspace::from_vectors(view.dim(), &rows),
    })
}

/// Closure of a labelled monomial.
pub fn cyclic_closure_of_monomial(view: &ModuleView, t: &SuperTuple) -> Result<CyclicModule> {
    let idx = view
        .index_of(t)
        .ok_or_else(|| Error::Unrealizable(format!("monomial {t:?} not in this view")))?;
    cyclic_closure(view, &svec_unit(idx, view.shape.spec().one()))
}

// ---------------------------------------------------------------------------
// Simplicity certification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityCert {
    pub dim: usize,
    pub end_dim: usize,
    pub end_local: bool,
    pub no_proper_weight_submodule: bool,
    pub probabilistic: bool,
    pub simple: bool,
}

/// Two-sided simplicity certificate: the restricted endomorphism algebra must
/// be local with one-dimensional semisimple quotient, and no single
/// weight-space vector may generate a proper invariant subspace.
pub fn simplicity_certify(view: &ModuleView, cm: &CyclicModule) -> Result<SimplicityCert> {
    let space = &cm.space;
    let d = space.dim();
    if d == 0 {
        return Err(Error::CertificationFailed("empty module".into()));
    }
    let field = view.shape.spec().field();
    let restricted = view.restrict_all(space)?;
    let comm = commutant(&restricted, d, field.clone())?;
    let end_dim = comm.len();
    let end_local = is_local_algebra(&comm, d, field.clone())?;

    let mut probabilistic = false;
    let mut proper_found = false;
    let classes = view.weight_classes();
    let mut rng = crate::detrand::SplitMix64::new(0x51ed ^ (view.s << 8) ^ d as u64);
    for class in &classes {
        let cls_span = Subspace::coordinate_span(view.dim(), class, field.clone());
        let w = intersect(space, &cls_span)?;
        if w.dim() == 0 {
            continue;
        }
        let mut candidates: Vec<SVec> = w.rows().to_vec();
        if w.dim() > 1 {
            probabilistic = true;
            for _ in 0..50 {
                let mut v: SVec = Vec::new();
                for row in w.rows() {
                    let c = rng.range_i64(-3, 3);
                    if c != 0 {
                        let scal = view.shape.spec().from_int(c);
                        v = svec_add_scaled(&v, &scal, row);
                    }
                }
                if !v.is_empty() {
                    candidates.push(v);
                }
            }
        }
        for cand in candidates {
            let sub = cyclic_closure(view, &cand)?;
            if sub.space.dim() < d {
                proper_found = true;
            }
        }
        if proper_found {
            break;
        }
    }
    let no_proper = !proper_found;
    Ok(SimplicityCert {
        dim: d,
        end_dim,
        end_local,
        no_proper_weight_submodule: no_proper,
        probabilistic,
        simple: end_local && no_proper,
    })
}

// ---------------------------------------------------------------------------
// Socle certification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SocleSummand {
    pub kappa: EnergyVector,
    pub eta: SuperTuple,
    pub dim: usize,
    pub cert: SimplicityCert,
}

#[derive(Debug, Clone, Serialize)]
pub struct SocleCertificate {
    pub s: u64,
    pub grade: u64,
    pub socle_dim: usize,
    pub invariant: bool,
    pub summands: Vec<SocleSummand>,
    pub direct_sum_ok: bool,
    pub exclusion_candidates: usize,
    pub exclusion_ok: bool,
    pub exact_exclusion_ok: bool,
    pub probabilistic: bool,
    pub passed: bool,
    pub log: Vec<String>,
}

/// Exact exclusion of simple submodules outside `socle`: with the quotient's
/// socle certified recursively, a simple submodule avoiding the socle exists
/// iff some module map from the (semisimple) quotient socle into its preimage
/// survives the projection. The intertwiner space is solved exactly, so a
/// vanishing composite certifies `Soc = socle` with no randomness.
fn exact_exclusion(view: &ModuleView, socle: &Subspace) -> Result<bool> {
    if socle.dim() == view.dim() {
        return Ok(true);
    }
    let field = view.shape.spec().field();
    let quotient = view.quotient(socle)?;
    let (q_socle, q_cert) = socle_certify(&quotient)?;
    if !q_cert.passed {
        return Ok(false);
    }
    // preimage E = φ⁻¹(S_Q): socle rows plus lifts of the quotient socle rows
    let pivots: BTreeSet<usize> = socle.pivots().into_iter().collect();
    let free: Vec<usize> = (0..view.dim()).filter(|i| !pivots.contains(i)).collect();
    let mut e_rows: Vec<SVec> = socle.rows().to_vec();
    for row in q_socle.rows() {
        e_rows.push(row.iter().map(|(j, c)| (free[*j], c.clone())).collect());
    }
    let e_space = Subspace::from_vectors(view.dim(), &e_rows);
    let mats_e = view.restrict_all(&e_space)?;
    let mats_sq = quotient.restrict_all(&q_socle)?;
    // projection matrix P: E-basis vectors pushed into S_Q coordinates
    let socle_red = socle.reducer();
    let q_red = q_socle.reducer();
    let free_index: HashMap<usize, usize> =
        free.iter().enumerate().map(|(qi, &vi)| (vi, qi)).collect();
    let mut p_entries = Vec::new();
    for (col, row) in e_space.rows().iter().enumerate() {
        let reduced = socle_red.reduce(row);
        let q_vec: SVec = reduced
            .into_iter()
            .map(|(i, c)| (free_index[&i], c))
            .collect();
        let coords = q_red.coordinates(&q_vec).ok_or_else(|| {
            Error::CertificationFailed("preimage does not project into the quotient socle".into())
        })?;
        for (r, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                p_entries.push((r, col, c));
            }
        }
    }
    let projection = SparseMatrix::new(q_socle.dim(), e_space.dim(), p_entries);
    let homs = intertwiner_basis(&mats_sq, &mats_e, q_socle.dim(), e_space.dim(), field)?;
    for sigma in &homs {
        if !projection.matmul(sigma).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certified socle of a view: the span `S` of minimal-energy monomials,
/// certified by (a) invariance, (b) a direct-sum decomposition into simple
/// cyclic modules generated by the grade representatives, and (c) exclusion
/// of maximal vectors outside `S` (any such vector generates a submodule
/// meeting `S` properly, so no simple submodule lives outside `S`).
pub fn socle_certify(view: &ModuleView) -> Result<(Subspace, SocleCertificate)> {
    if !view.shape.structure_ready() {
        return Err(Error::InvalidConfig(
            "structure analysis requires m >= 2".into(),
        ));
    }
    let shape = view.shape;
    let field = shape.spec().field();
    let grade = view.min_edeg();
    let mut log = Vec::new();
    let socle_coords: Vec<usize> = (0..view.dim())
        .filter(|&i| view.edeg_of(i) == grade)
        .collect();
    let socle = Subspace::coordinate_span(view.dim(), &socle_coords, field.clone());
    let socle_set: BTreeSet<usize> = socle_coords.iter().copied().collect();

    // (a) invariance
    let mut invariant = true;
    'outer: for m in view.all_mats() {
        for &c in &socle_coords {
            for (r, _) in m.column(c) {
                if !socle_set.contains(&r) {
                    invariant = false;
                    break 'outer;
                }
            }
        }
    }
    log.push(format!(
        "socle candidate: grade {grade}, dim {}, invariant: {invariant}",
        socle.dim()
    ));

    // (b) direct sum of simple cyclic modules over the grade tuples
    let kappas = grade_tuples(&shape, grade);
    let mut summands = Vec::new();
    let mut running = Subspace::zero(view.dim());
    let mut dims_total = 0usize;
    let mut direct_sum_ok = true;
    for kappa in &kappas {
        let eta = grade_representative(&shape, kappa, view.s)?;
        let cm = cyclic_closure_of_monomial(view, &eta)?;
        let cert = simplicity_certify(view, &cm)?;
        if !cert.simple {
            direct_sum_ok = false;
            log.push(format!("summand {kappa:?} failed simplicity"));
        }
        dims_total += cm.space.dim();
        running = sum(&running, &cm.space)?;
        summands.push(SocleSummand {
            kappa: kappa.clone(),
            eta,
            dim: cm.space.dim(),
            cert,
        });
    }
    if running.dim() != dims_total {
        direct_sum_ok = false;
        log.push("summands are not independent".into());
    }
    if running != socle {
        direct_sum_ok = false;
        log.push(format!(
            "summands span dim {} but socle has dim {}",
            running.dim(),
            socle.dim()
        ));
    }

    // (c) maximal-vector exclusion
    let e_stack_rows: usize = view.e.iter().map(|m| m.nrows).sum();
    let mut entries = Vec::new();
    let mut offset = 0usize;
    for m in &view.e {
        for (r, c, v) in m.entries() {
            entries.push((r + offset, *c, v.clone()));
        }
        offset += m.nrows;
    }
    let stacked = SparseMatrix::new(e_stack_rows.max(1), view.dim(), entries);
    let maximal = nullspace(&stacked, field.clone());
    let mut exclusion_ok = true;
    let mut probabilistic = false;
    let mut exclusion_candidates = 0usize;
    let classes = view.weight_classes();
    let mut covered = 0usize;
    let mut rng = crate::detrand::SplitMix64::new(0x50c1e ^ (view.s << 10) ^ grade);
    for class in &classes {
        let cls_span = Subspace::coordinate_span(view.dim(), class, field.clone());
        let w = intersect(&maximal, &cls_span)?;
        covered += w.dim();
        if w.dim() == 0 {
            continue;
        }
        let mut candidates: Vec<SVec> = Vec::new();
        let mut outside = false;
        for row in w.rows() {
            if !socle.member(row) {
                outside = true;
            }
            candidates.push(row.clone());
        }
        if w.dim() > 1 && outside {
            probabilistic = true;
            log.push(format!(
                "maximal-vector weight space of dim {} reaches outside the socle; adding randomized probes",
                w.dim()
            ));
            for _ in 0..50 {
                let mut v: SVec = Vec::new();
                for row in w.rows() {
                    let c = rng.range_i64(-3, 3);
                    if c != 0 {
                        let scal = shape.spec().from_int(c);
                        v = svec_add_scaled(&v, &scal, row);
                    }
                }
                if !v.is_empty() {
                    candidates.push(v);
                }
            }
        }
        for cand in candidates {
            if socle.member(&cand) {
                continue;
            }
            exclusion_candidates += 1;
            let sub = cyclic_closure(view, &cand)?;
            let meet = intersect(&socle, &sub.space)?;
            if meet.dim() == 0 || meet.dim() >= sub.space.dim() {
                exclusion_ok = false;
                log.push(format!(
                    "maximal vector escapes: closure dim {}, meets socle in dim {}",
                    sub.space.dim(),
                    meet.dim()
                ));
            }
        }
    }
    if covered != maximal.dim() {
        // the weight split must exhaust the kernel of the raising operators
        exclusion_ok = false;
        log.push(format!(
            "weight split covered {covered} of {} maximal dimensions",
            maximal.dim()
        ));
    }

    // (d) exact exclusion through the quotient socle
    let exact_exclusion_ok = exact_exclusion(view, &socle)?;
    if !exact_exclusion_ok {
        log.push("intertwiner exclusion found a simple submodule escaping the socle".into());
    }

    let passed = invariant && direct_sum_ok && exclusion_ok && exact_exclusion_ok;
    let cert = SocleCertificate {
        s: view.s,
        grade,
        socle_dim: socle.dim(),
        invariant,
        summands,
        direct_sum_ok,
        exclusion_candidates,
        exclusion_ok,
        exact_exclusion_ok,
        probabilistic,
        passed,
        log,
    };
    Ok((socle, cert))
}

/// Socle certification of a full graded piece.
pub fn socle_certify_piece(shape: &Shape, s: u64) -> Result<(Subspace, SocleCertificate)> {
    let view = ModuleView::from_piece(*shape, s);
    socle_certify(&view)
}

// ---------------------------------------------------------------------------
// Energy filtration and Loewy layers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationLayer {
    pub grade: u64,
    pub multiplicity: u64,
    pub layer_dim: u64,
    pub expected_dim: u64,
    pub primitive_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub m: usize,
    pub n: usize,
    pub ell: u64,
    pub r: u64,
    pub s: u64,
    pub e0: u64,
    pub e: u64,
    pub dim: u64,
    #[serde(skip)]
    pub chain: Vec<Subspace>,
    pub chain_dims: Vec<u64>,
    pub layers: Vec<FiltrationLayer>,
    pub loewy_length: u64,
    pub invariant_ok: bool,
    pub passed: bool,
}

/// The energy filtration `V_i = span{ monomials with Edeg ≤ E₀(s)+i }`, with
/// invariance, Loewy-layer dimensions and primitive-vector checks.
pub fn edeg_filtration(shape: &Shape, s: u64) -> Result<FiltrationReport> {
    if !shape.structure_ready() {
        return Err(Error::InvalidConfig(
            "structure analysis requires m >= 2".into(),
        ));
    }
    let view = ModuleView::from_piece(*shape, s);
    let (e0, e) = energy_bounds(shape, s)?;
    let field = shape.spec().field();
    let length = e - e0 + 1;
    let mut chain = Vec::new();
    let mut chain_dims = Vec::new();
    let mut layers = Vec::new();
    let mut invariant_ok = true;
    let mut prev_count = 0usize;
    for i in 0..length {
        let grade = e0 + i;
        let coords: Vec<usize> = (0..view.dim())
            .filter(|&ix| view.edeg_of(ix) <= grade)
            .collect();
        let coord_set: BTreeSet<usize> = coords.iter().copied().collect();
        for m in view.all_mats() {
            for &c in &coords {
                for (rr, _) in m.column(c) {
                    if !coord_set.contains(&rr) {
                        invariant_ok = false;
                    }
                }
            }
        }
        let layer_dim = (coords.len() - prev_count) as u64;
        let kappas = grade_tuples(shape, grade);
        let multiplicity = kappas.len() as u64;
        let count_formula = grade_tuple_count_formula(shape, grade);
        if count_formula.to_string() != multiplicity.to_string() {
            return Err(Error::CertificationFailed(format!(
                "grade tuple count mismatch at grade {grade}"
            )));
        }
        let s_residual = s - grade * shape.ell;
        let restricted: u64 = restricted_dim_formula(shape, s_residual)
            .to_string()
            .parse()
            .map_err(|_| Error::CertificationFailed("layer dimension overflow".into()))?;
        let expected_dim = restricted * multiplicity;
        // primitive vectors: e_j · x^(η(κ̲)) lands in V_{i−1}
        let mut primitive_ok = true;
        for kappa in &kappas {
            let eta = grade_representative(shape, kappa, s)?;
            let idx = view
                .index_of(&eta)
                .ok_or_else(|| Error::Unrealizable("representative missing".into()))?;
            for em in &view.e {
                for (r, _) in em.column(idx) {
                    if view.edeg_of(r) >= grade {
                        primitive_ok = false;
                    }
                }
            }
        }
        layers.push(FiltrationLayer {
            grade,
            multiplicity,
            layer_dim,
            expected_dim,
            primitive_ok,
        });
        chain_dims.push(coords.len() as u64);
        prev_count = coords.len();
        chain.push(Subspace::coordinate_span(
            view.dim(),
            &coords,
            field.clone(),
        ));
    }
    let dims_ok = layers.iter().all(|l| l.layer_dim == l.expected_dim);
    let prim_ok = layers.iter().all(|l| l.primitive_ok);
    let top_ok = chain_dims.last().copied() == Some(view.dim() as u64);
    let strict_ok = chain_dims.windows(2).all(|w| w[0] < w[1]) && !chain_dims.is_empty()
        && chain_dims[0] > 0;
    let passed = invariant_ok && dims_ok && prim_ok && top_ok && strict_ok;
    Ok(FiltrationReport {
        m: shape.m,
        n: shape.n,
        ell: shape.ell,
        r: shape.r,
        s,
        e0,
        e,
        dim: view.dim() as u64,
        chain,
        chain_dims,
        layers,
        loewy_length: length,
        invariant_ok,
        passed,
    })
}

// ---------------------------------------------------------------------------
// Indecomposability and rigidity
// ---------------------------------------------------------------------------

/// Indecomposability through the endomorphism algebra: the commutant of the
/// full generator set, closed multiplicatively, must be local.
pub fn indecomposability_certify_view(view: &ModuleView) -> Result<bool> {
    let field = view.shape.spec().field();
    let mats: Vec<SparseMatrix> = view.all_mats().into_iter().cloned().collect();
    let comm = commutant(&mats, view.dim(), field.clone())?;
    is_local_algebra(&comm, view.dim(), field)
}

pub fn indecomposability_certify(shape: &Shape, s: u64) -> Result<bool> {
    let view = ModuleView::from_piece(*shape, s);
    indecomposability_certify_view(&view)
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub s: u64,
    pub levels: Vec<SocleCertificate>,
    pub loewy_length: u64,
    pub expected_length: u64,
    pub passed: bool,
}

/// Rigidity witness: on each successive quotient by the running filtration
/// term, the certified socle must be exactly the next energy layer, so the
/// socle filtration coincides with the energy filtration of minimal length.
pub fn socle_filtration_check(shape: &Shape, s: u64) -> Result<RigidityReport> {
    let (e0, e) = energy_bounds(shape, s)?;
    let expected_length = e - e0 + 1;
    let mut view = ModuleView::from_piece(*shape, s);
    let mut levels = Vec::new();
    let mut passed = true;
    while view.dim() > 0 {
        let (socle, cert) = socle_certify(&view)?;
        passed &= cert.passed;
        let full = socle.dim() == view.dim();
        levels.push(cert);
        if full {
            break;
        }
        view = view.quotient(&socle)?;
    }
    let loewy_length = levels.len() as u64;
    passed &= loewy_length == expected_length;
    Ok(RigidityReport {
        s,
        levels,
        loewy_length,
        expected_length,
        passed,
    })
}

// ---------------------------------------------------------------------------
// Inclusion net
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct NetVertex {
    pub grade: u64,
    pub kappa: EnergyVector,
    pub eta: SuperTuple,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NetEdge {
    pub from: usize,
    pub to: usize,
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InclusionNet {
    pub s: u64,
    pub e0: u64,
    pub e: u64,
    pub vertices: Vec<NetVertex>,
    pub edges: Vec<NetEdge>,
    pub same_grade_mutual_noninclusion: bool,
    pub passed: bool,
}

/// The net of cyclic submodules `𝔙_(η(κ̲))` over all grades between the
/// energy extremes, with verified strict inclusions along `κ̲ → κ̲ + ε_j`.
pub fn inclusion_net(shape: &Shape, s: u64) -> Result<InclusionNet> {
    if !shape.structure_ready() {
        return Err(Error::InvalidConfig(
            "structure analysis requires m >= 2".into(),
        ));
    }
    let view = ModuleView::from_piece(*shape, s);
    let (e0, e) = energy_bounds(shape, s)?;
    let mut vertices = Vec::new();
    let mut spaces: Vec<Subspace> = Vec::new();
    let mut index: HashMap<EnergyVector, usize> = HashMap::new();
    for grade in e0..=e {
        for kappa in grade_tuples(shape, grade) {
            let eta = grade_representative(shape, &kappa, s)?;
            let cm = cyclic_closure_of_monomial(&view, &eta)?;
            index.insert(kappa.clone(), vertices.len());
            vertices.push(NetVertex {
                grade,
                kappa,
                eta,
                dim: cm.space.dim(),
            });
            spaces.push(cm.space);
        }
    }
    let mut edges = Vec::new();
    let mut all_strict = true;
    for vi in 0..vertices.len() {
        if vertices[vi].grade == e {
            continue;
        }
        for j in 0..shape.m {
            let mut up = vertices[vi].kappa.clone();
            up.0[j] += 1;
            if up.0[j] > shape.r - 1 {
                continue;
            }
            if let Some(&ti) = index.get(&up) {
                let strict = spaces[ti].contains_subspace(&spaces[vi])
                    && spaces[vi].dim() < spaces[ti].dim();
                all_strict &= strict;
                edges.push(NetEdge {
                    from: vi,
                    to: ti,
                    strict,
                });
            }
        }
    }
    // same-grade vertices: mutually non-included cyclic modules
    let mut mutual = true;
    for i in 0..vertices.len() {
        for j in 0..vertices.len() {
            if i == j || vertices[i].grade != vertices[j].grade {
                continue;
            }
            if spaces[i].contains_subspace(&spaces[j]) {
                mutual = false;
            }
        }
    }
    let passed = all_strict && mutual;
    Ok(InclusionNet {
        s,
        e0,
        e,
        vertices,
        edges,
        same_grade_mutual_noninclusion: mutual,
        passed,
    })
}

/// DOT rendering of the net, one vertex per representative with its grade
/// tuple and cyclic-module dimension.
pub fn net_to_dot(net: &InclusionNet) -> String {
    let mut out = String::new();
    out.push_str("digraph inclusion_net {\n");
    out.push_str("  rankdir=BT;\n");
    for (i, v) in net.vertices.iter().enumerate() {
        let kappa: Vec<String> = v.kappa.0.iter().map(|k| k.to_string()).collect();
        out.push_str(&format!(
            "  v{} [label=\"{} (dim {})\"];\n",
            i,
            kappa.join(""),
            v.dim
        ));
    }
    for e in &net.edges {
        let style = if e.strict { "solid" } else { "dashed" };
        out.push_str(&format!("  v{} -> v{} [style={}];\n", e.from, e.to, style));
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Stratification checks on monomial pairs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct StratificationReport {
    pub s: u64,
    pub monomials: usize,
    pub equal_class_pairs: usize,
    pub strict_pairs: usize,
    pub incomparable_pairs: usize,
    pub passed: bool,
}

/// Exhaustive verification over monomial pairs of one graded piece:
/// equivalent tuples generate equal cyclic modules; componentwise-dominating
/// tuples generate strictly larger ones; equal total grade with different
/// vectors yields mutual non-inclusion.
pub fn stratification_check(shape: &Shape, s: u64) -> Result<StratificationReport> {
    let view = ModuleView::from_piece(*shape, s);
    if !view.has_monomial_action() {
        return Err(Error::CertificationFailed(
            "graded piece lost monomial action".into(),
        ));
    }
    let n = view.dim();
    let reaches: Vec<BTreeSet<usize>> = (0..n).map(|i| monomial_reach(&view, i)).collect();
    let evecs: Vec<EnergyVector> = view
        .labels
        .iter()
        .map(|t| edeg_vector(t, shape.ell))
        .collect();
    let mut equal_class_pairs = 0;
    let mut strict_pairs = 0;
    let mut incomparable_pairs = 0;
    let mut passed = true;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (ea, eb) = (&evecs[a], &evecs[b]);
            if ea == eb {
                equal_class_pairs += 1;
                if reaches[a] != reaches[b] {
                    passed = false;
                }
            } else if ea.0.iter().zip(&eb.0).all(|(x, y)| x >= y) {
                strict_pairs += 1;
                if !(reaches[a].is_superset(&reaches[b]) && reaches[a].len() > reaches[b].len()) {
                    passed = false;
                }
            } else if ea.total() == eb.total() {
                incomparable_pairs += 1;
                if reaches[a].contains(&b) || reaches[b].contains(&a) {
                    passed = false;
                }
            }
        }
    }
    Ok(StratificationReport {
        s,
        monomials: n,
        equal_class_pairs,
        strict_pairs,
        incomparable_pairs,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superindex::energy_bounds_brute;

    fn sh(m: usize, n: usize, ell: u64, r: u64) -> Shape {
        Shape::new(m, n, ell, r).unwrap()
    }

    #[test]
    fn closure_of_every_monomial_in_restricted_piece_is_full() {
        let shape = sh(2, 1, 3, 1);
        for s in 0..=shape.top_degree() {
            let view = ModuleView::from_piece(shape, s);
            for i in 0..view.dim() {
                let cm = cyclic_closure(&view, &svec_unit(i, shape.spec().one())).unwrap();
                assert_eq!(
                    cm.space.dim(),
                    view.dim(),
                    "restricted piece not simple at s={s}, monomial {i}"
                );
            }
        }
    }

    #[test]
    fn closure_invariance() {
        let shape = sh(2, 1, 3, 2);
        let view = ModuleView::from_piece(shape, 4);
        for i in 0..view.dim() {
            let cm = cyclic_closure(&view, &svec_unit(i, shape.spec().one())).unwrap();
            assert!(cm.space.member(&cm.generator));
            for m in view.all_mats() {
                for row in cm.space.rows() {
                    assert!(cm.space.member(&m.apply(row)));
                }
            }
        }
    }

    #[test]
    fn socle_certified_on_small_shape() {
        let shape = sh(2, 1, 3, 2);
        for s in 0..=shape.top_degree() {
            let (socle, cert) = socle_certify_piece(&shape, s).unwrap();
            assert!(
                cert.passed,
                "socle certification failed at s={s}: {:?}",
                cert.log
            );
            let (e0, _) = energy_bounds_brute(&shape, s).unwrap();
            assert_eq!(cert.grade, e0);
            assert_eq!(socle.dim(), cert.socle_dim);
        }
    }

    #[test]
    fn socle_summand_count_matches_grade_tuples() {
        let shape = sh(2, 1, 3, 2);
        for s in [3u64, 5, 7] {
            let (_, cert) = socle_certify_piece(&shape, s).unwrap();
            let expected = grade_tuples(&shape, cert.grade).len();
            assert_eq!(cert.summands.len(), expected);
        }
    }

    #[test]
    fn socle_closure_has_restricted_dimension() {
        let shape = sh(2, 1, 3, 2);
        let view = ModuleView::from_piece(shape, 3);
        let eta = grade_representative(&shape, &EnergyVector(vec![0, 0]), 3).unwrap();
        let cm = cyclic_closure_of_monomial(&view, &eta).unwrap();
        let expected: u64 = restricted_dim_formula(&shape, 3)
            .to_string()
            .parse()
            .unwrap();
        assert_eq!(cm.space.dim() as u64, expected);
        // and at the larger shape: the grade-zero generator of degree 3
        // spans a copy of the restricted piece (dimension 22)
        let big = sh(3, 2, 3, 2);
        let view = ModuleView::from_piece(big, 3);
        let eta = grade_representative(&big, &EnergyVector(vec![0, 0, 0]), 3).unwrap();
        let cm = cyclic_closure_of_monomial(&view, &eta).unwrap();
        assert_eq!(cm.space.dim(), 22);
        assert_eq!(
            restricted_dim_formula(&big, 3).to_string(),
            "22"
        );
    }

    #[test]
    fn filtration_small_shape() {
        let shape = sh(2, 1, 3, 2);
        for s in 0..=shape.top_degree() {
            let rep = edeg_filtration(&shape, s).unwrap();
            assert!(rep.passed, "filtration failed at s={s}: {rep:?}");
            assert_eq!(rep.loewy_length, rep.e - rep.e0 + 1);
            let total: u64 = rep.layers.iter().map(|l| l.layer_dim).sum();
            assert_eq!(total, rep.dim);
        }
    }

    #[test]
    fn indecomposable_pieces_and_decomposable_control() {
        let shape = sh(2, 1, 3, 2);
        for s in 0..=shape.top_degree() {
            assert!(
                indecomposability_certify(&shape, s).unwrap(),
                "piece s={s} not certified indecomposable"
            );
        }
        let a = ModuleView::from_piece(shape, 2);
        let b = ModuleView::from_piece(shape, 3);
        let ab = direct_sum(&a, &b);
        assert!(!indecomposability_certify_view(&ab).unwrap());
    }

    #[test]
    fn rigidity_small_shape() {
        let shape = sh(2, 1, 3, 2);
        for s in 0..=shape.top_degree() {
            let rep = socle_filtration_check(&shape, s).unwrap();
            assert!(rep.passed, "rigidity failed at s={s}");
            assert_eq!(rep.loewy_length, rep.expected_length);
        }
    }

    #[test]
    fn stratification_small_shape() {
        let shape = sh(2, 1, 3, 2);
        for s in 0..=shape.top_degree() {
            let rep = stratification_check(&shape, s).unwrap();
            assert!(rep.passed, "stratification failed at s={s}");
        }
    }

    #[test]
    fn equivalent_monomials_generate_equal_modules() {
        // ⟨(3,0);(1)⟩ ~ ⟨(4,0);(0)⟩ at (2,1,3,2), s = 4
        let shape = sh(2, 1, 3, 2);
        let view = ModuleView::from_piece(shape, 4);
        let a =
            cyclic_closure_of_monomial(&view, &SuperTuple::new(vec![3, 0], vec![1])).unwrap();
        let b =
            cyclic_closure_of_monomial(&view, &SuperTuple::new(vec![4, 0], vec![0])).unwrap();
        assert_eq!(a.space, b.space);
    }

    #[test]
    fn net_small_shape() {
        let shape = sh(2, 1, 3, 2);
        let net = inclusion_net(&shape, 5).unwrap();
        assert!(net.passed, "net failed: {net:?}");
        assert!(!net.edges.is_empty());
        let dot = net_to_dot(&net);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("->"));
    }

    #[test]
    fn quotient_view_dynamics() {
        let shape = sh(2, 1, 3, 2);
        let view = ModuleView::from_piece(shape, 5);
        let (socle, cert) = socle_certify(&view).unwrap();
        assert!(cert.passed);
        let q = view.quotient(&socle).unwrap();
        assert_eq!(q.dim(), view.dim() - socle.dim());
        assert!(q.has_monomial_action());
        assert!(q.min_edeg() > view.min_edeg());
    }

    #[test]
    fn single_even_variable_is_refused() {
        let shape = Shape::new(1, 1, 3, 1).unwrap();
        assert!(!shape.structure_ready());
        assert!(socle_certify_piece(&shape, 1).is_err());
        assert!(edeg_filtration(&shape, 1).is_err());
        assert!(inclusion_net(&shape, 1).is_err());
    }

    #[test]
    fn schur_commutant_of_simple_piece_is_scalars() {
        // the full generator set of a simple restricted piece has a
        // one-dimensional commutant
        let shape = sh(2, 1, 3, 1);
        let view = ModuleView::from_piece(shape, 1);
        let mats: Vec<_> = view.all_mats().into_iter().cloned().collect();
        let comm =
            crate::linalg::commutant(&mats, view.dim(), shape.spec().field()).unwrap();
        assert_eq!(comm.len(), 1);
    }

    #[test]
    fn simplicity_rejects_non_minimal_generators() {
        // a monomial of higher energy grade generates a non-simple module
        let shape = sh(2, 1, 3, 2);
        let view = ModuleView::from_piece(shape, 5);
        let (e0, e) = energy_bounds_brute(&shape, 5).unwrap();
        assert!(e > e0);
        let idx = (0..view.dim())
            .find(|&i| view.edeg_of(i) == e)
            .expect("high-grade monomial exists");
        let cm = cyclic_closure(&view, &svec_unit(idx, shape.spec().one())).unwrap();
        let cert = simplicity_certify(&view, &cm).unwrap();
        assert!(!cert.simple);
    }
}
