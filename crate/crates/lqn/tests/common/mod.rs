//! Brute-force representation check written from the atom rules, sharing no
//! code with the bitset verifier.

#![allow(dead_code)]

use lqn_core::algebra::Atom;
use lqn_core::geometry::LabelMatrix;

pub fn in_product(q: u32, x: Atom, y: Atom, z: Atom) -> bool {
    use Atom::*;
    match (x, y) {
        (Identity, w) | (w, Identity) => z == w,
        (A(i), A(j)) if i == j => z == Identity || z == A(i),
        (A(i), A(j)) => matches!(z, A(k) if k != i && k != j && k <= q),
        (A(_), T(_)) | (T(_), A(_)) => matches!(z, T(_)),
        (T(k), T(l)) if k == l => matches!(z, Identity | A(_)),
        (T(_), T(_)) => matches!(z, A(_)),
    }
}

pub fn naive_is_representation(m: &LabelMatrix) -> bool {
    let (q, n, v) = (m.q(), m.n(), m.vertex_count());
    let mut atoms = vec![Atom::Identity];
    atoms.extend((0..=q).map(Atom::A));
    atoms.extend((1..=n).map(Atom::T));
    let lab: Vec<Atom> = (0..v * v).map(|i| m.atom(i / v, i % v)).collect();
    let l = |x: usize, y: usize| lab[x * v + y];
    for x in 0..v {
        for y in 0..v {
            for z in 0..v {
                if !in_product(q, l(x, y), l(y, z), l(x, z)) {
                    return false;
                }
            }
        }
    }
    for x in 0..v {
        for y in 0..v {
            let c = l(x, y);
            for &d in &atoms {
                for &e in &atoms {
                    if in_product(q, d, e, c) && !(0..v).any(|z| l(x, z) == d && l(z, y) == e) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Runs the CLI in-process and returns `(exit code, stdout, stderr)`.
pub fn lqn(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lqn").chain(args.iter().copied());
    let code = lqn::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
