use lqn_core::gf::{Field, FieldElement};
use lqn_core::primes::{is_prime, prime_power_decomposition, prime_powers_from};

fn prime_powers_upto(max: u64) -> Vec<u64> {
    prime_powers_from(2).take_while(|&q| q <= max).collect()
}

#[test]
fn prime_power_list() {
    assert_eq!(
        prime_powers_upto(32),
        vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]
    );
    assert_eq!(prime_power_decomposition(729), Some((3, 6)));
    assert_eq!(prime_power_decomposition(12), None);
}

#[test]
fn prime_fields_match_modular_arithmetic() {
    for p in (2..60).filter(|&p| is_prime(p)) {
        let f = Field::new(p).unwrap();
        let e = |v: u64| f.element(v as u32).unwrap();
        for a in 0..p {
            for b in 0..p {
                assert_eq!(f.add(e(a), e(b)).value() as u64, (a + b) % p);
                assert_eq!(f.mul(e(a), e(b)).value() as u64, (a * b) % p);
            }
        }
    }
}

#[test]
fn field_axioms_up_to_64() {
    for q in prime_powers_upto(64) {
        let f = Field::new(q).unwrap();
        let els: Vec<FieldElement> = f.elements().collect();
        assert_eq!(els.len() as u64, q);
        for &a in &els {
            assert_eq!(f.add(a, FieldElement::ZERO), a);
            assert_eq!(f.mul(a, FieldElement::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO, "q={q}");
            if a != FieldElement::ZERO {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE, "q={q}");
            }
            // Frobenius: a^q = a
            assert_eq!(f.pow(a, q), a);
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if a != FieldElement::ZERO && b != FieldElement::ZERO {
                    assert_ne!(f.mul(a, b), FieldElement::ZERO, "zero divisor in GF({q})");
                }
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for q in prime_powers_upto(256) {
        let f = Field::new(q).unwrap();
        let generator = f
            .elements()
            .skip(1)
            .find(|&g| f.multiplicative_order(g).unwrap() as u64 == q - 1)
            .unwrap_or_else(|| panic!("GF({q}) has no generator"));
        let mut seen = vec![false; q as usize];
        let mut x = FieldElement::ONE;
        for _ in 0..q - 1 {
            assert!(!seen[x.index()]);
            seen[x.index()] = true;
            x = f.mul(x, generator);
        }
        assert_eq!(x, FieldElement::ONE);
    }
}

#[test]
fn characteristic_and_degree() {
    let f = Field::new(27).unwrap();
    assert_eq!((f.characteristic(), f.degree(), f.order()), (3, 3, 27));
    // p copies of 1 sum to 0
    let mut s = FieldElement::ZERO;
    for _ in 0..3 {
        s = f.add(s, FieldElement::ONE);
    }
    assert_eq!(s, FieldElement::ZERO);
    assert_eq!(f.reduction_polynomial().len(), 4);
}
