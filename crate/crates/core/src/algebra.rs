//! The atom structure of `L(q, n)`.
//!
//! Atoms are `1'`, `a_0 .. a_q` and `t_1 .. t_n`, all self-converse. They are
//! indexed in that order, so `1'` is `0`, `a_i` is `1 + i` and `t_k` is
//! `q + 1 + k`. Composition of atoms is
//!
//! ```text
//! a_i ; a_i = 1' + a_i
//! a_i ; a_j = A - (a_i + a_j)      (i != j)
//! a_i ; t_k = T
//! t_k ; t_k = 1' + A
//! t_k ; t_l = A                    (k != l)
//! ```
//!
//! with `A` the sum of the `a` atoms and `T` the sum of the `t` atoms. The
//! table is stored as one bit row per ordered atom pair, so a membership test
//! is a single word lookup.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bitset::BitRows;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Identity,
    /// `a_i`, `0 <= i <= q`; `a_q` is the vertical class.
    A(u32),
    /// `t_k`, `1 <= k <= n`.
    T(u32),
}

impl Atom {
    pub fn is_identity(self) -> bool {
        self == Atom::Identity
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Identity => f.write_str("1'"),
            Atom::A(i) => write!(f, "a{i}"),
            Atom::T(k) => write!(f, "t{k}"),
        }
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "1'" {
            return Ok(Atom::Identity);
        }
        let bad = Error::InvalidParameter("unknown atom name");
        let (kind, digits) = s.split_at_checked(1).ok_or(bad.clone())?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad);
        }
        let index: u32 = digits.parse().map_err(|_| bad.clone())?;
        match kind {
            "a" => Ok(Atom::A(index)),
            "t" => Ok(Atom::T(index)),
            _ => Err(bad),
        }
    }
}

/// Atoms and composition table of `L(q, n)`; immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct AtomStructure {
    q: u32,
    n: u32,
    comp: BitRows,
}

impl fmt::Debug for AtomStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtomStructure")
            .field("q", &self.q)
            .field("n", &self.n)
            .finish_non_exhaustive()
    }
}

impl AtomStructure {
    pub fn new(q: u32, n: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be positive"));
        }
        let count = (q + n + 2) as usize;
        let mut s = AtomStructure {
            q,
            n,
            comp: BitRows::new(count * count, count),
        };
        let a_atoms = || (0..=q).map(Atom::A);
        let t_atoms = || (1..=n).map(Atom::T);
        let atoms: Vec<Atom> = s.atoms().collect();
        for &x in &atoms {
            for &y in &atoms {
                let members: Vec<Atom> = match (x, y) {
                    (Atom::Identity, other) | (other, Atom::Identity) => Vec::from([other]),
                    (Atom::A(i), Atom::A(j)) if i == j => Vec::from([Atom::Identity, x]),
                    (Atom::A(i), Atom::A(j)) => a_atoms()
                        .filter(|&a| a != Atom::A(i) && a != Atom::A(j))
                        .collect(),
                    (Atom::A(_), Atom::T(_)) | (Atom::T(_), Atom::A(_)) => t_atoms().collect(),
                    (Atom::T(k), Atom::T(l)) if k == l => {
                        core::iter::once(Atom::Identity).chain(a_atoms()).collect()
                    }
                    (Atom::T(_), Atom::T(_)) => a_atoms().collect(),
                };
                let row = s.pair_row(s.idx(x), s.idx(y));
                for z in members {
                    let zi = s.idx(z);
                    s.comp.insert(row, zi);
                }
            }
        }
        Ok(s)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q + n + 2`.
    pub fn atom_count(&self) -> usize {
        (self.q + self.n + 2) as usize
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.atom_count()).map(|i| self.atom(i))
    }

    pub fn index_of(&self, atom: Atom) -> Option<usize> {
        match atom {
            Atom::Identity => Some(0),
            Atom::A(i) if i <= self.q => Some(1 + i as usize),
            Atom::T(k) if (1..=self.n).contains(&k) => Some((self.q + 1 + k) as usize),
            _ => None,
        }
    }

    fn idx(&self, atom: Atom) -> usize {
        self.index_of(atom)
            .unwrap_or_else(|| panic!("atom {atom} does not belong to L({},{})", self.q, self.n))
    }

    /// Atom at a table index. Panics if the index is out of range.
    pub fn atom(&self, index: usize) -> Atom {
        let q = self.q as usize;
        match index {
            0 => Atom::Identity,
            i if i <= q + 1 => Atom::A((i - 1) as u32),
            i if i < self.atom_count() => Atom::T((i - q - 1) as u32),
            i => panic!("atom index {i} out of range"),
        }
    }

    pub fn a_index(&self, i: u32) -> usize {
        debug_assert!(i <= self.q);
        1 + i as usize
    }

    pub fn t_index(&self, k: u32) -> usize {
        debug_assert!((1..=self.n).contains(&k));
        (self.q + 1 + k) as usize
    }

    pub fn is_a_index(&self, index: usize) -> bool {
        (1..=self.q as usize + 1).contains(&index)
    }

    pub fn is_t_index(&self, index: usize) -> bool {
        index > self.q as usize + 1 && index < self.atom_count()
    }

    #[inline]
    fn pair_row(&self, x: usize, y: usize) -> usize {
        x * self.atom_count() + y
    }

    /// Bit row of `x ; y` over atom indices.
    #[inline]
    pub fn composition_mask(&self, x: usize, y: usize) -> &[u64] {
        self.comp.row(self.pair_row(x, y))
    }

    /// `z` in `x ; y`, by atom index.
    #[inline]
    pub fn contains_index(&self, x: usize, y: usize, z: usize) -> bool {
        self.comp.contains(self.pair_row(x, y), z)
    }

    /// Whether `z <= x ; y`. Panics if an atom is not in this structure.
    pub fn composition_contains(&self, x: Atom, y: Atom, z: Atom) -> bool {
        self.contains_index(self.idx(x), self.idx(y), self.idx(z))
    }

    /// The atoms of `x ; y` in index order.
    pub fn compose(&self, x: Atom, y: Atom) -> Vec<Atom> {
        self.comp
            .ones(self.pair_row(self.idx(x), self.idx(y)))
            .map(|i| self.atom(i))
            .collect()
    }

    /// Every ordered pair `(d, e)` with `c <= d ; e`, in index order.
    pub fn mandatory_witness_pairs(&self, c: Atom) -> Vec<(Atom, Atom)> {
        self.mandatory_witness_indices(self.idx(c))
            .into_iter()
            .map(|(d, e)| (self.atom(d), self.atom(e)))
            .collect()
    }

    pub fn mandatory_witness_indices(&self, c: usize) -> Vec<(usize, usize)> {
        let m = self.atom_count();
        (0..m)
            .flat_map(|d| (0..m).map(move |e| (d, e)))
            .filter(|&(d, e)| self.contains_index(d, e, c))
            .collect()
    }

    /// Exhaustive associativity check on atoms, `O(m^4)` for `m` atoms.
    /// Meant for small structures.
    pub fn is_associative(&self) -> bool {
        self.first_nonassociative_triple().is_none()
    }

    pub fn first_nonassociative_triple(&self) -> Option<(Atom, Atom, Atom)> {
        let m = self.atom_count();
        let compose_set = |set: &[bool], y: usize, left: bool| {
            let mut out = alloc::vec![false; m];
            for (x, _) in set.iter().enumerate().filter(|(_, &b)| b) {
                let row = if left {
                    self.pair_row(x, y)
                } else {
                    self.pair_row(y, x)
                };
                for z in self.comp.ones(row) {
                    out[z] = true;
                }
            }
            out
        };
        for x in 0..m {
            for y in 0..m {
                let mut xy = alloc::vec![false; m];
                self.comp
                    .ones(self.pair_row(x, y))
                    .for_each(|z| xy[z] = true);
                for z in 0..m {
                    let mut yz = alloc::vec![false; m];
                    self.comp
                        .ones(self.pair_row(y, z))
                        .for_each(|w| yz[w] = true);
                    // (x;y);z versus x;(y;z)
                    if compose_set(&xy, z, true) != compose_set(&yz, x, false) {
                        return Some((self.atom(x), self.atom(y), self.atom(z)));
                    }
                }
            }
        }
        None
    }

    /// Rows of the composition table over unordered pairs `x <= y` in index
    /// order, as `(x, y, x;y)`.
    pub fn table_rows(&self) -> impl Iterator<Item = (Atom, Atom, Vec<Atom>)> + '_ {
        let m = self.atom_count();
        (0..m).flat_map(move |x| {
            (x..m).map(move |y| {
                (
                    self.atom(x),
                    self.atom(y),
                    self.compose(self.atom(x), self.atom(y)),
                )
            })
        })
    }

    /// Short name such as `L(5,2)`.
    pub fn name(&self) -> String {
        alloc::format!("L({},{})", self.q, self.n)
    }
}
