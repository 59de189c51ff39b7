//! Slope representations over `F_q x F_q`.
//!
//! Two distinct points `(a1, b1)`, `(a2, b2)` get the atom `a_i` where `i` is
//! the slope `(b2 - b1) / (a2 - a1)`, or `a_q` when `a1 = a2`. The doubled
//! structure takes two copies of the plane, labels pairs inside a copy by
//! slope and every pair across the copies by `t_1`.
//!
//! Point `(sheet, a, b)` has index `sheet * q^2 + a * q + b`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Atom, AtomStructure};
use crate::bitset::BitRows;
use crate::gf::{Field, FieldElement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sheet {
    Primary,
    Mirror,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub sheet: Sheet,
    pub a: FieldElement,
    pub b: FieldElement,
}

impl Point {
    pub fn new(sheet: Sheet, a: FieldElement, b: FieldElement) -> Self {
        Point { sheet, a, b }
    }

    pub fn index(&self, q: u32) -> usize {
        let q = q as usize;
        let sheet = match self.sheet {
            Sheet::Primary => 0,
            Sheet::Mirror => 1,
        };
        sheet * q * q + self.a.index() * q + self.b.index()
    }

    pub fn from_index(index: usize, f: &Field) -> Result<Self> {
        let q = f.order() as usize;
        let sheet = match index / (q * q) {
            0 => Sheet::Primary,
            1 => Sheet::Mirror,
            _ => return Err(Error::InvalidParameter("point index out of range")),
        };
        let rest = index % (q * q);
        Ok(Point {
            sheet,
            a: f.element((rest / q) as u32)?,
            b: f.element((rest % q) as u32)?,
        })
    }
}

/// Label of the pair `{p1, p2}` inside one copy of the plane.
pub fn slope_label(f: &Field, p1: Point, p2: Point) -> Result<Atom> {
    if p1 == p2 {
        return Err(Error::SamePoint);
    }
    if p1.sheet != p2.sheet {
        return Err(Error::InvalidParameter("points lie in different copies"));
    }
    if p1.a == p2.a {
        return Ok(Atom::A(f.order()));
    }
    let slope = f.div(f.sub(p2.b, p1.b), f.sub(p2.a, p1.a))?;
    Ok(Atom::A(slope.value()))
}

/// A symmetric assignment of one atom (by table index) to every pair of
/// points; the diagonal holds `1'`.
#[derive(Clone, PartialEq, Eq)]
pub struct LabelMatrix {
    q: u32,
    n: u32,
    v: usize,
    labels: Vec<u16>,
}

impl fmt::Debug for LabelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabelMatrix")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("v", &self.v)
            .finish_non_exhaustive()
    }
}

impl LabelMatrix {
    /// All-identity matrix; callers fill in the off-diagonal labels.
    pub fn new(q: u32, n: u32, v: usize) -> Result<Self> {
        if q + n + 2 > u32::from(u16::MAX) {
            return Err(Error::InvalidParameter("too many atoms for 16-bit labels"));
        }
        Ok(LabelMatrix {
            q,
            n,
            v,
            labels: vec![0; v * v],
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn atom_count(&self) -> usize {
        (self.q + self.n + 2) as usize
    }

    /// Points per copy of the plane, `q^2`.
    pub fn plane_size(&self) -> usize {
        (self.q as usize).pow(2)
    }

    /// Whether the vertex count is that of two copies of the plane.
    pub fn is_doubled(&self) -> bool {
        self.v == 2 * self.plane_size()
    }

    /// Copy that vertex `x` belongs to in the doubled layout.
    #[inline]
    pub fn sheet_of(&self, x: usize) -> usize {
        x / self.plane_size()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.labels[x * self.v + y] as usize
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, label: usize) {
        debug_assert!(label < self.atom_count());
        self.labels[x * self.v + y] = label as u16;
        self.labels[y * self.v + x] = label as u16;
    }

    pub fn row(&self, x: usize) -> &[u16] {
        &self.labels[x * self.v..(x + 1) * self.v]
    }

    /// Atom on the pair `(x, y)`.
    pub fn atom(&self, x: usize, y: usize) -> Atom {
        index_to_atom(self.q, self.get(x, y))
    }

    /// The same labels read as an `L(q, n)` matrix for a different `n`. Atom
    /// indices of `1'`, the `a` atoms and `t_k` do not depend on `n`.
    pub fn with_n(mut self, n: u32) -> Result<Self> {
        let max = self.labels.iter().copied().max().unwrap_or(0) as usize;
        if max >= (self.q + n + 2) as usize {
            return Err(Error::InvalidParameter(
                "matrix uses atoms beyond the requested n",
            ));
        }
        self.n = n;
        Ok(self)
    }

    /// Whether the matrix belongs to `s`'s algebra.
    pub fn check_shape(&self, s: &AtomStructure) -> Result<()> {
        if self.q != s.q() || self.n != s.n() {
            return Err(Error::ShapeMismatch {
                m_q: self.q,
                m_n: self.n,
                s_q: s.q(),
                s_n: s.n(),
            });
        }
        Ok(())
    }

    /// Structural sanity: symmetric, identity exactly on the diagonal, every
    /// label a valid atom index.
    pub fn is_well_formed(&self) -> bool {
        let m = self.atom_count();
        (0..self.v).all(|x| {
            (0..self.v).all(|y| {
                let l = self.get(x, y);
                l < m && l == self.get(y, x) && ((x == y) == (l == 0))
            })
        })
    }

    /// Per-vertex, per-atom neighbor sets: row `x * atom_count + atom` holds
    /// every `y` with `label(x, y) = atom`.
    pub fn neighbor_index(&self) -> BitRows {
        let m = self.atom_count();
        let mut rows = BitRows::new(self.v * m, self.v);
        for x in 0..self.v {
            for (y, &l) in self.row(x).iter().enumerate() {
                rows.insert(x * m + l as usize, y);
            }
        }
        rows
    }

    /// Copy of the matrix with vertices renamed by `perm` (old `x` becomes
    /// `perm[x]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.v);
        let mut out = self.clone();
        for x in 0..self.v {
            for y in 0..self.v {
                out.labels[perm[x] * self.v + perm[y]] = self.labels[x * self.v + y];
            }
        }
        out
    }
}

pub(crate) fn index_to_atom(q: u32, index: usize) -> Atom {
    let q = q as usize;
    match index {
        0 => Atom::Identity,
        i if i <= q + 1 => Atom::A((i - 1) as u32),
        i => Atom::T((i - q - 1) as u32),
    }
}

fn checked_order(q: u64) -> Result<Field> {
    let f = Field::new(q)?;
    if f.order() > u32::from(u16::MAX) / 2 {
        return Err(Error::InvalidParameter("q too large for a label matrix"));
    }
    Ok(f)
}

fn fill_plane(m: &mut LabelMatrix, f: &Field, sheet: Sheet) -> Result<()> {
    let q = f.order();
    let points: Vec<Point> = f
        .elements()
        .flat_map(|a| f.elements().map(move |b| Point::new(sheet, a, b)))
        .collect();
    for (i, &p1) in points.iter().enumerate() {
        for &p2 in &points[i + 1..] {
            let label = match slope_label(f, p1, p2)? {
                Atom::A(k) => 1 + k as usize,
                _ => unreachable!(),
            };
            m.set(p1.index(q), p2.index(q), label);
        }
    }
    Ok(())
}

/// The slope representation of `L(q, 0)` on `q^2` points.
pub fn build_lyndon(q: u64) -> Result<LabelMatrix> {
    let f = checked_order(q)?;
    let qq = f.order();
    let mut m = LabelMatrix::new(qq, 0, (qq as usize).pow(2))?;
    fill_plane(&mut m, &f, Sheet::Primary)?;
    Ok(m)
}

/// Two copies of the slope representation with every cross pair labelled
/// `t_1`: a representation of `L(q, 1)` on `2 q^2` points.
pub fn build_doubled(q: u64) -> Result<LabelMatrix> {
    let f = checked_order(q)?;
    let qq = f.order();
    let plane = (qq as usize).pow(2);
    let mut m = LabelMatrix::new(qq, 1, 2 * plane)?;
    fill_plane(&mut m, &f, Sheet::Primary)?;
    fill_plane(&mut m, &f, Sheet::Mirror)?;
    let t1 = qq as usize + 2;
    for x in 0..plane {
        for y in plane..2 * plane {
            m.set(x, y, t1);
        }
    }
    Ok(m)
}
