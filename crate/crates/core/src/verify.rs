//! Representation checking.
//!
//! A label matrix represents an atom structure when
//!
//! * every triangle is allowed: `label(x, z) <= label(x, y) ; label(y, z)`, and
//! * every mandatory witness exists: for each pair `(d, e)` of diversity atoms
//!   with `label(x, y) <= d ; e` some `z` has `label(x, z) = d` and
//!   `label(z, y) = e`.
//!
//! All atoms are self-converse and the table is closed under triangle
//! rotation, so each unordered triangle `x < y < z` is tested once. Witness
//! tests are intersections of per-vertex neighbor bitsets.

use alloc::vec::Vec;

use crate::algebra::{Atom, AtomStructure};
use crate::bitset::BitRows;
use crate::coloring::find_failures;
use crate::geometry::LabelMatrix;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    ForbiddenTriangle,
    MissingWitness,
}

/// A single reason a matrix is not a representation.
///
/// For a forbidden triangle `points` is `(x, y, Some(z))` with `x < y < z` and
/// `atoms` is `[label(x,y), label(y,z), label(x,z)]`. For a missing witness it
/// is `(x, y, None)` with `x < y` and `atoms` is `[label(x,y), d, e]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: usize,
    pub y: usize,
    pub z: Option<usize>,
    pub atoms: [Atom; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Report {
    /// Stop at the first violation in scan order.
    First,
    /// Collect every violation.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Read-only checker over one matrix. Vertices can be checked independently
/// with [`Verifier::check_vertex`]; concatenating the results for
/// `x = 0, 1, ..` gives the sequential scan order.
#[derive(Debug)]
pub struct Verifier<'a> {
    m: &'a LabelMatrix,
    s: &'a AtomStructure,
    neighbors: BitRows,
    /// Mandatory witness pairs of diversity atoms, per atom index.
    needs: Vec<Vec<(usize, usize)>>,
}

impl<'a> Verifier<'a> {
    pub fn new(m: &'a LabelMatrix, s: &'a AtomStructure) -> Result<Self> {
        m.check_shape(s)?;
        let needs = (0..s.atom_count())
            .map(|c| {
                s.mandatory_witness_indices(c)
                    .into_iter()
                    .filter(|&(d, e)| d != 0 && e != 0)
                    .collect()
            })
            .collect();
        Ok(Verifier {
            m,
            s,
            neighbors: m.neighbor_index(),
            needs,
        })
    }

    /// Violations with `x` as the smallest point: triangles `x < y < z` and
    /// witnesses for pairs `x < y`, ordered by `y`, then triangles before the
    /// witness, then `z` or `(d, e)`.
    pub fn check_vertex(&self, x: usize, report: Report) -> Vec<Violation> {
        let m = self.m;
        let s = self.s;
        let v = m.vertex_count();
        let width = s.atom_count();
        let row_x = m.row(x);
        let mut out = Vec::new();
        for y in x + 1..v {
            let c = row_x[y] as usize;
            let row_y = m.row(y);
            for z in y + 1..v {
                let yz = row_y[z] as usize;
                let xz = row_x[z] as usize;
                if !s.contains_index(c, yz, xz) {
                    out.push(Violation {
                        kind: ViolationKind::ForbiddenTriangle,
                        x,
                        y,
                        z: Some(z),
                        atoms: [m.atom(x, y), m.atom(y, z), m.atom(x, z)],
                    });
                    if report == Report::First {
                        return out;
                    }
                }
            }
            for &(d, e) in &self.needs[c] {
                let dx = self.neighbors.row(x * width + d);
                let ey = self.neighbors.row(y * width + e);
                if !crate::bitset::intersects(dx, ey) {
                    out.push(Violation {
                        kind: ViolationKind::MissingWitness,
                        x,
                        y,
                        z: None,
                        atoms: [m.atom(x, y), s.atom(d), s.atom(e)],
                    });
                    if report == Report::First {
                        return out;
                    }
                }
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.m.vertex_count()
    }
}

/// Full representation check, sequential.
pub fn verify_full(m: &LabelMatrix, s: &AtomStructure, report: Report) -> Result<VerifyReport> {
    let verifier = Verifier::new(m, s)?;
    let mut violations = Vec::new();
    for x in 0..m.vertex_count() {
        violations.extend(verifier.check_vertex(x, report));
        if report == Report::First && !violations.is_empty() {
            break;
        }
    }
    Ok(VerifyReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// The witness conditions on t-edges alone: no edge of `m` fails.
pub fn verify_conditions_only(m: &LabelMatrix, s: &AtomStructure) -> Result<bool> {
    Ok(find_failures(m, s)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_doubled, build_lyndon};

    #[test]
    fn lyndon_five_is_valid() {
        let m = build_lyndon(5).unwrap();
        let s = AtomStructure::new(5, 0).unwrap();
        assert!(verify_full(&m, &s, Report::All).unwrap().valid);
    }

    #[test]
    fn doubled_three_is_valid() {
        let m = build_doubled(3).unwrap();
        let s = AtomStructure::new(3, 1).unwrap();
        assert!(verify_full(&m, &s, Report::All).unwrap().valid);
        assert!(verify_conditions_only(&m, &s).unwrap());
    }

    #[test]
    fn edited_label_gives_forbidden_triangle() {
        let mut m = build_lyndon(3).unwrap();
        let s = AtomStructure::new(3, 0).unwrap();
        let (x, y) = (0, 4);
        let old = m.get(x, y);
        let wrong = if old == 1 { 2 } else { 1 };
        m.set(x, y, wrong);
        let report = verify_full(&m, &s, Report::All).unwrap();
        assert!(!report.valid);
        let triangles: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.kind == ViolationKind::ForbiddenTriangle)
            .collect();
        assert!(!triangles.is_empty());
        for t in triangles {
            let pts = [t.x, t.y, t.z.unwrap()];
            assert!(pts.contains(&x) && pts.contains(&y), "{t:?}");
        }
        let first = verify_full(&m, &s, Report::First).unwrap();
        assert_eq!(first.violations.len(), 1);
        assert_eq!(first.violations[0], report.violations[0]);
    }

    #[test]
    fn shape_mismatch() {
        let m = build_lyndon(3).unwrap();
        let s = AtomStructure::new(3, 1).unwrap();
        assert!(verify_full(&m, &s, Report::First).is_err());
    }

    #[test]
    fn two_point_lines_lack_the_aa_witness() {
        let m = build_lyndon(2).unwrap();
        let s = AtomStructure::new(2, 0).unwrap();
        let report = verify_full(&m, &s, Report::All).unwrap();
        assert!(!report.valid);
        for v in &report.violations {
            assert_eq!(v.kind, ViolationKind::MissingWitness);
            assert_eq!(v.atoms[1], v.atoms[0]);
            assert_eq!(v.atoms[2], v.atoms[0]);
        }
        // one per unordered pair
        assert_eq!(report.violations.len(), 6);
    }
}
