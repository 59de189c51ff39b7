//! Random t-edge colorings of the doubled slope representation and the
//! resampling search for a representation of `L(q, n)`.
//!
//! Starting from the doubled matrix, every cross pair is given a uniform color
//! in `t_1 .. t_n`. An edge *fails* if it has an unmet need:
//!
//! * an `a`-edge `uv` needs, for every `(t_i, t_j)`, a `z` with `uz = t_i` and
//!   `zv = t_j` (condition `Att`);
//! * a `t`-edge `uv` needs, for every `a_k` and `t_j`, a `z` with `uz = a_k`,
//!   `zv = t_j`, and a `z'` with `uz' = t_j`, `z'v = a_k` (condition `Tatta`).
//!
//! The search repeatedly takes the first failing edge in scan order and
//! redraws every t-edge incident to either endpoint, the variables the
//! failure depends on.
//!
//! Randomness comes from ChaCha8 seeded with [`SeedableRng::seed_from_u64`].
//! The initial coloring uses stream [`COLORING_STREAM`], resampling uses
//! [`RESAMPLING_STREAM`] and Monte Carlo trial `t` uses
//! `MONTE_CARLO_STREAM_BASE + t`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Atom, AtomStructure};
use crate::bitset::{self, BitRows};
use crate::geometry::{build_doubled, LabelMatrix};
use crate::verify::{verify_full, Report};
use crate::{Error, Result};

pub const COLORING_STREAM: u64 = 0;
pub const RESAMPLING_STREAM: u64 = 1;
pub const MONTE_CARLO_STREAM_BASE: u64 = 2;

/// Resampling rounds allowed per vertex when no explicit cap is given.
pub const DEFAULT_ROUNDS_PER_VERTEX: u64 = 1000;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `a_k <= t_i ; t_j`
    Att,
    /// `t_i <= a_k ; t_j . t_j ; a_k`
    Tatta,
}

/// An edge `u < v` with one unmet need `(d, e)`: no `z` has `uz = d` and
/// `zv = e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FailureRecord {
    pub u: usize,
    pub v: usize,
    pub condition: Condition,
    pub need: (Atom, Atom),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Success,
    Exhausted,
    /// No edge failed but the full representation check did not pass.
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringRun {
    pub q: u32,
    pub n: u32,
    pub seed: u64,
    pub max_rounds: u64,
    /// Resampling steps taken.
    pub rounds_used: u64,
    /// Individual t-edge redraws over all steps.
    pub resample_count: u64,
    pub outcome: Outcome,
    /// `2n > q`: `L(q, n)` has no representation at all.
    pub infeasible: bool,
}

fn require_doubled(m: &LabelMatrix) -> Result<()> {
    if !m.is_doubled() {
        return Err(Error::InvalidParameter(
            "expected a doubled matrix on 2q^2 points",
        ));
    }
    let plane = m.plane_size();
    let q = m.q() as usize;
    for x in 0..m.vertex_count() {
        for (y, &l) in m.row(x).iter().enumerate() {
            let l = l as usize;
            let cross = (x < plane) != (y < plane);
            let ok = if x == y {
                l == 0
            } else if cross {
                l > q + 1
            } else {
                (1..=q + 1).contains(&l)
            };
            if !ok {
                return Err(Error::InvalidParameter(
                    "doubled matrix must carry a-atoms inside copies and t-atoms across",
                ));
            }
        }
    }
    Ok(())
}

/// Cross pairs `(x, y)`, `x` in the primary copy, in scan order.
fn cross_pairs(plane: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..plane).flat_map(move |x| (plane..2 * plane).map(move |y| (x, y)))
}

/// Draws a fresh color for every cross pair of `m`, in scan order.
pub fn fill_random_colors<R: Rng>(m: &mut LabelMatrix, rng: &mut R) {
    let n = m.n();
    let t0 = m.q() as usize + 1;
    for (x, y) in cross_pairs(m.plane_size()) {
        let c = rng.gen_range(0..n) as usize;
        m.set(x, y, t0 + 1 + c);
    }
}

/// Copy of the doubled matrix `m` as an `L(q, n)` matrix with every t-edge
/// colored uniformly at random.
pub fn randomize_t_colors(m: &LabelMatrix, n: u32, seed: u64) -> Result<LabelMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1"));
    }
    require_doubled(m)?;
    let mut out = m.clone();
    // Relabel to t_1 first so the n change is always legal.
    let t1 = m.q() as usize + 2;
    for (x, y) in cross_pairs(m.plane_size()) {
        out.set(x, y, t1);
    }
    let mut out = out.with_n(n)?;
    fill_random_colors(&mut out, &mut rng_for(seed, COLORING_STREAM));
    Ok(out)
}

/// Every unmet need of every edge, sorted by `(u, v)` and then by the need's
/// atom indices. Uses neighbor bitsets.
pub fn find_failures(m: &LabelMatrix, s: &AtomStructure) -> Result<Vec<FailureRecord>> {
    m.check_shape(s)?;
    let width = s.atom_count();
    let nb = m.neighbor_index();
    let a_atoms: Vec<usize> = (0..=s.q()).map(|i| s.a_index(i)).collect();
    let t_atoms: Vec<usize> = (1..=s.n()).map(|k| s.t_index(k)).collect();
    let mut out = Vec::new();
    let v = m.vertex_count();
    for x in 0..v {
        for y in x + 1..v {
            let c = m.get(x, y);
            let mut check = |d: usize, e: usize, cond: Condition| {
                if !nb.intersects(x * width + d, y * width + e) {
                    out.push(FailureRecord {
                        u: x,
                        v: y,
                        condition: cond,
                        need: (s.atom(d), s.atom(e)),
                    });
                }
            };
            if s.is_a_index(c) {
                for &d in &t_atoms {
                    for &e in &t_atoms {
                        check(d, e, Condition::Att);
                    }
                }
            } else if s.is_t_index(c) {
                for &d in &a_atoms {
                    for &e in &t_atoms {
                        check(d, e, Condition::Tatta);
                    }
                }
                for &d in &t_atoms {
                    for &e in &a_atoms {
                        check(d, e, Condition::Tatta);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether `f` is an unmet need of `m` right now.
fn is_current(m: &LabelMatrix, s: &AtomStructure, f: &FailureRecord) -> bool {
    let (Some(d), Some(e)) = (s.index_of(f.need.0), s.index_of(f.need.1)) else {
        return false;
    };
    let (u, v) = (f.u, f.v);
    if u >= v || v >= m.vertex_count() {
        return false;
    }
    let c = m.get(u, v);
    let kind_ok = match f.condition {
        Condition::Att => s.is_a_index(c) && s.is_t_index(d) && s.is_t_index(e),
        Condition::Tatta => {
            s.is_t_index(c)
                && ((s.is_a_index(d) && s.is_t_index(e)) || (s.is_t_index(d) && s.is_a_index(e)))
        }
    };
    kind_ok && !(0..m.vertex_count()).any(|z| m.get(u, z) == d && m.get(z, v) == e)
}

/// The t-edges redrawn for a failure at `uv`: all cross pairs at `u`, then
/// those at `v`, each in increasing order of the other endpoint, `uv` once.
fn redraw_order(plane: usize, u: usize, v: usize) -> impl Iterator<Item = (usize, usize)> {
    let across = move |x: usize| {
        let base = if x < plane { plane } else { 0 };
        (base..base + plane).map(move |w| (x, w))
    };
    across(u).chain(across(v).filter(move |&(_, w)| w != u))
}

/// Redraws every t-edge incident to an endpoint of the failed edge. Returns
/// the number of edges redrawn.
pub fn resample_step<R: Rng>(
    m: &mut LabelMatrix,
    s: &AtomStructure,
    f: &FailureRecord,
    rng: &mut R,
) -> Result<usize> {
    m.check_shape(s)?;
    require_doubled(m)?;
    if !is_current(m, s, f) {
        return Err(Error::StaleFailure);
    }
    let t0 = m.q() as usize + 2;
    let n = m.n();
    let mut count = 0;
    for (x, w) in redraw_order(m.plane_size(), f.u, f.v) {
        let c = rng.gen_range(0..n) as usize;
        m.set(x, w, t0 + c);
        count += 1;
    }
    Ok(count)
}

/// Incremental state for the resampling search over a doubled matrix.
///
/// Keeps, for every vertex, a bitset per color of its cross neighbors, and
/// for every vertex `w` and line `L` of the opposite copy, how many points of
/// `L` are joined to `w` by each color. Then the `Tatta` need `(a_k, t_j)` at
/// a t-edge `uw` holds iff the line of slope `k` through `u` has a point other
/// than `u` joined to `w` in color `t_j`, a count lookup.
#[derive(Debug, Clone)]
pub struct Resampler {
    m: LabelMatrix,
    plane: usize,
    /// `q + 1` classes per vertex.
    slopes: usize,
    colors: usize,
    /// Line id of `(x, k)`, local to the copy of `x`.
    line_of: Vec<u32>,
    lines_per_copy: usize,
    /// Row `x * n + c`: cross neighbors `w` of `x` with color `c`, indexed
    /// relative to the start of the other copy.
    by_color: BitRows,
    /// `(w * lines_per_copy + line) * n + c`: points of `line` (in the copy
    /// opposite `w`) joined to `w` in color `c`.
    line_counts: Vec<u32>,
}

impl Resampler {
    pub fn new(m: LabelMatrix) -> Result<Self> {
        require_doubled(&m)?;
        if m.n() == 0 {
            return Err(Error::InvalidParameter("n must be at least 1"));
        }
        let plane = m.plane_size();
        let v = m.vertex_count();
        let slopes = m.q() as usize + 1;
        let colors = m.n() as usize;

        // Lines are the classes {x} + N_k(x); check they partition each copy.
        const NONE: u32 = u32::MAX;
        let mut line_of = vec![NONE; v * slopes];
        let mut lines_per_copy = 0;
        for sheet in 0..2 {
            let mut next = 0u32;
            for x in sheet * plane..(sheet + 1) * plane {
                for k in 0..slopes {
                    if line_of[x * slopes + k] != NONE {
                        continue;
                    }
                    let members: Vec<usize> = core::iter::once(x)
                        .chain(
                            (sheet * plane..(sheet + 1) * plane).filter(|&y| m.get(x, y) == 1 + k),
                        )
                        .collect();
                    for &y in &members {
                        if line_of[y * slopes + k] != NONE {
                            return Err(not_lines());
                        }
                        line_of[y * slopes + k] = next;
                    }
                    for (i, &y) in members.iter().enumerate() {
                        if members[i + 1..].iter().any(|&z| m.get(y, z) != 1 + k) {
                            return Err(not_lines());
                        }
                    }
                    next += 1;
                }
            }
            if sheet == 0 {
                lines_per_copy = next as usize;
            } else if lines_per_copy != next as usize {
                return Err(not_lines());
            }
        }

        let mut r = Resampler {
            m,
            plane,
            slopes,
            colors,
            line_of,
            lines_per_copy,
            by_color: BitRows::new(v * colors, plane),
            line_counts: vec![0; v * lines_per_copy * colors],
        };
        for (x, w) in cross_pairs(plane) {
            let c = r.color(x, w);
            r.add_edge(x, w, c);
        }
        Ok(r)
    }

    pub fn matrix(&self) -> &LabelMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> LabelMatrix {
        self.m
    }

    #[inline]
    fn t0(&self) -> usize {
        self.m.q() as usize + 2
    }

    /// Zero-based color of the cross pair `(x, w)`.
    #[inline]
    fn color(&self, x: usize, w: usize) -> usize {
        self.m.get(x, w) - self.t0()
    }

    #[inline]
    fn local(&self, w: usize) -> usize {
        w % self.plane
    }

    #[inline]
    fn count_slot(&self, w: usize, line: u32, c: usize) -> usize {
        (w * self.lines_per_copy + line as usize) * self.colors + c
    }

    fn add_edge(&mut self, x: usize, w: usize, c: usize) {
        self.by_color.insert(x * self.colors + c, self.local(w));
        self.by_color.insert(w * self.colors + c, self.local(x));
        for k in 0..self.slopes {
            let lx = self.line_of[x * self.slopes + k];
            let slot = self.count_slot(w, lx, c);
            self.line_counts[slot] += 1;
            let lw = self.line_of[w * self.slopes + k];
            let slot = self.count_slot(x, lw, c);
            self.line_counts[slot] += 1;
        }
    }

    fn remove_edge(&mut self, x: usize, w: usize, c: usize) {
        self.by_color.remove(x * self.colors + c, self.local(w));
        self.by_color.remove(w * self.colors + c, self.local(x));
        for k in 0..self.slopes {
            let lx = self.line_of[x * self.slopes + k];
            let slot = self.count_slot(w, lx, c);
            self.line_counts[slot] -= 1;
            let lw = self.line_of[w * self.slopes + k];
            let slot = self.count_slot(x, lw, c);
            self.line_counts[slot] -= 1;
        }
    }

    fn recolor(&mut self, x: usize, w: usize, c: usize) {
        let old = self.color(x, w);
        if old != c {
            self.remove_edge(x, w, old);
            self.m.set(x, w, self.t0() + c);
            self.add_edge(x, w, c);
        }
    }

    /// Calls `visit` with each unmet need of edge `u < v` in need order until
    /// it returns `false`.
    fn scan_edge(
        &self,
        u: usize,
        v: usize,
        visit: &mut impl FnMut(Condition, usize, usize) -> bool,
    ) -> bool {
        let t0 = self.t0();
        let n = self.colors;
        if self.m.sheet_of(u) == self.m.sheet_of(v) {
            for i in 0..n {
                let ui = self.by_color.row(u * n + i);
                for j in 0..n {
                    if !bitset::intersects(ui, self.by_color.row(v * n + j))
                        && !visit(Condition::Att, t0 + i, t0 + j)
                    {
                        return false;
                    }
                }
            }
        } else {
            let own = self.color(u, v);
            // (a_k, t_j): z on the slope-k line through u.
            for k in 0..self.slopes {
                let line = self.line_of[u * self.slopes + k];
                for j in 0..n {
                    let hits = self.line_counts[self.count_slot(v, line, j)] - u32::from(own == j);
                    if hits == 0 && !visit(Condition::Tatta, 1 + k, t0 + j) {
                        return false;
                    }
                }
            }
            // (t_j, a_k): z on the slope-k line through v.
            for j in 0..n {
                for k in 0..self.slopes {
                    let line = self.line_of[v * self.slopes + k];
                    let hits = self.line_counts[self.count_slot(u, line, j)] - u32::from(own == j);
                    if hits == 0 && !visit(Condition::Tatta, t0 + j, 1 + k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn record(&self, u: usize, v: usize, cond: Condition, d: usize, e: usize) -> FailureRecord {
        let q = self.m.q();
        FailureRecord {
            u,
            v,
            condition: cond,
            need: (
                crate::geometry::index_to_atom(q, d),
                crate::geometry::index_to_atom(q, e),
            ),
        }
    }

    /// Unmet needs of the edge `u < v`.
    pub fn edge_failures(&self, u: usize, v: usize) -> Vec<FailureRecord> {
        let mut out = Vec::new();
        self.scan_edge(u, v, &mut |cond, d, e| {
            out.push(self.record(u, v, cond, d, e));
            true
        });
        out
    }

    /// First unmet need in scan order: lowest `(u, v)`, then need order.
    pub fn first_failure(&self) -> Option<FailureRecord> {
        let v = self.m.vertex_count();
        let mut found = None;
        'outer: for x in 0..v {
            for y in x + 1..v {
                self.scan_edge(x, y, &mut |cond, d, e| {
                    found = Some(self.record(x, y, cond, d, e));
                    false
                });
                if found.is_some() {
                    break 'outer;
                }
            }
        }
        found
    }

    /// Every unmet need, in the order of [`find_failures`].
    pub fn all_failures(&self) -> Vec<FailureRecord> {
        let v = self.m.vertex_count();
        let mut out = Vec::new();
        for x in 0..v {
            for y in x + 1..v {
                self.scan_edge(x, y, &mut |cond, d, e| {
                    out.push(self.record(x, y, cond, d, e));
                    true
                });
            }
        }
        out
    }

    /// Redraws every t-edge at `u` and `v`; same draw order as
    /// [`resample_step`]. Returns the number of edges redrawn.
    pub fn resample<R: Rng>(&mut self, u: usize, v: usize, rng: &mut R) -> usize {
        let n = self.m.n();
        let mut count = 0;
        for (x, w) in redraw_order(self.plane, u, v) {
            let c = rng.gen_range(0..n) as usize;
            self.recolor(x, w, c);
            count += 1;
        }
        count
    }
}

fn not_lines() -> Error {
    Error::InvalidParameter("a-classes of the matrix do not form lines")
}

/// Searches for a representation of `L(q, n)` on the doubled slope
/// representation: random initial coloring, then resample the first failing
/// edge until none fails or `max_rounds` steps have been taken. `max_rounds`
/// defaults to `1000 * 2q^2`.
///
/// A failure-free matrix is also run through [`verify_full`]; if that check
/// does not pass the outcome is [`Outcome::Rejected`].
pub fn represent(
    q: u64,
    n: u32,
    seed: u64,
    max_rounds: Option<u64>,
) -> Result<(LabelMatrix, ColoringRun)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1"));
    }
    let doubled = build_doubled(q)?;
    let s = AtomStructure::new(doubled.q(), n)?;
    let max_rounds =
        max_rounds.unwrap_or(DEFAULT_ROUNDS_PER_VERTEX * doubled.vertex_count() as u64);
    let colored = randomize_t_colors(&doubled, n, seed)?;
    let mut search = Resampler::new(colored)?;
    let mut rng = rng_for(seed, RESAMPLING_STREAM);
    let mut run = ColoringRun {
        q: s.q(),
        n,
        seed,
        max_rounds,
        rounds_used: 0,
        resample_count: 0,
        outcome: Outcome::Exhausted,
        infeasible: 2 * u64::from(n) > q,
    };
    loop {
        match search.first_failure() {
            None => break,
            Some(_) if run.rounds_used >= max_rounds => {
                return Ok((search.into_matrix(), run));
            }
            Some(f) => {
                run.resample_count += search.resample(f.u, f.v, &mut rng) as u64;
                run.rounds_used += 1;
            }
        }
    }
    let m = search.into_matrix();
    let sound = find_failures(&m, &s)?.is_empty() && verify_full(&m, &s, Report::First)?.valid;
    run.outcome = if sound {
        Outcome::Success
    } else {
        Outcome::Rejected
    };
    Ok((m, run))
}

/// Outcome of one Monte Carlo coloring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    /// The fixed `Att` event: a-edge `(0, 1)` lacks a `(t_1, t_1)` witness.
    pub att_fixed: bool,
    /// The fixed `Tatta` event: t-edge `(0, q^2)` lacks an `(a_0, t_1)`
    /// witness.
    pub tatta_fixed: bool,
    /// Some edge fails.
    pub any_failure: bool,
    /// Unmet `(edge, (t_i, t_j))` needs over all a-edges.
    pub att_failures: u64,
    /// Unmet `(edge, need)` pairs over all t-edges, both orientations.
    pub tatta_failures: u64,
}

/// Event counts for trial number `trial` of a Monte Carlo run over colorings
/// of the doubled `q` structure with `n` colors.
pub fn monte_carlo_trial(
    doubled: &LabelMatrix,
    n: u32,
    seed: u64,
    trial: u64,
) -> Result<TrialOutcome> {
    let mut m = doubled.clone().with_n(n)?;
    fill_random_colors(&mut m, &mut rng_for(seed, MONTE_CARLO_STREAM_BASE + trial));
    let search = Resampler::new(m)?;
    let plane = search.plane;
    let mut out = TrialOutcome::default();
    for f in search.all_failures() {
        match f.condition {
            Condition::Att => {
                out.att_failures += 1;
                if (f.u, f.v) == (0, 1) && f.need == (Atom::T(1), Atom::T(1)) {
                    out.att_fixed = true;
                }
            }
            Condition::Tatta => {
                out.tatta_failures += 1;
                if (f.u, f.v) == (0, plane) && f.need == (Atom::A(0), Atom::T(1)) {
                    out.tatta_fixed = true;
                }
            }
        }
        out.any_failure = true;
    }
    Ok(out)
}

/// Number of `Att` events (a-edge, color pair) and `Tatta` events (t-edge,
/// slope, color, orientation) in the doubled `q` structure with `n` colors.
pub fn event_counts(q: u32, n: u32) -> (u64, u64) {
    let plane = u64::from(q) * u64::from(q);
    let a_edges = plane * (plane - 1);
    let t_edges = plane * plane;
    let n = u64::from(n);
    (a_edges * n * n, t_edges * 2 * (u64::from(q) + 1) * n)
}
