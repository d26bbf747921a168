//! Verification of the Jordan superidentity through the Grassmann envelope.
//!
//! A superalgebra is a Jordan superalgebra when its Grassmann envelope
//! G(A) (over arbitrarily many generators) is a commutative algebra
//! satisfying (x^2 y) x = x^2 (y x). Commutativity of G(A) is exactly
//! supercommutativity of A, which is audited separately; this module checks
//! the degree-4 identity as a formal polynomial statement, never by
//! sampling field points.
//!
//! Why finitely many generators and which instances suffice: write
//! J(x, y) = (x^2 y) x - x^2 (y x) and expand x = sum of terms g (x) b over
//! Grassmann monomials g. Every resulting term is
//! W(u1, u2, u3; y) = ((u1 u2) y) u3 - (u1 u2)(y u3), whose Grassmann part
//! is the product of the four monomials in that fixed order. Monomials with
//! overlapping generator support annihilate, so only triples with pairwise
//! disjoint supports survive, and the sign of a surviving product depends
//! only on the parities of the blocks and their arrangement. Each block
//! therefore behaves like a single fresh generator (odd case) or like 1
//! (even case), and four generators — one per argument slot — realize every
//! surviving sign pattern of the four-slot identity. The constraints
//! grouped by multiset {i, j, k} of x-entries and basis index l of y are:
//!
//! - mixed multisets: the coefficient of l1*l2*l3 in J(l1 X1 + l2 X2 + l3 X3, Y)
//!   with slot-distinct generators. This equals m! times the formal
//!   coefficient of the cubic form, where m is the multiplicity of a
//!   repeated even entry; m <= 2 here, so the factor is invertible for
//!   every characteristic other than 2.
//! - triple even entries {i, i, i}: the slot sum degenerates to 6 times the
//!   instance and 6 = 0 in characteristic 3, so the unpolarized value
//!   J(1 (x) b_i, Y) is evaluated directly instead. (Odd triple entries
//!   need no such case: an odd square inside a single term annihilates.)
//!
//! Together these instances vanish exactly when G(A) over infinitely many
//! generators satisfies the identity.

use std::collections::BTreeMap;

use crate::poly::SparsePoly;
use crate::scalars::Scalar;

use super::grassmann::GrassmannEnvelope;
use super::{GradingViolation, Parity, Superalgebra};

/// One failing instance of the superidentity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanFailure {
    /// Multiset of basis indices filling the three x slots.
    pub x_triple: [usize; 3],
    /// Basis index filling the y slot.
    pub y: usize,
    /// Envelope coordinate where the residual does not vanish.
    pub envelope_coord: usize,
    /// The nonvanishing coefficient.
    pub residual: Scalar,
}

/// Outcome of the full Jordan-superalgebra audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanReport {
    pub grading_violations: Vec<GradingViolation>,
    pub supercommutativity_violations: Vec<(usize, usize)>,
    /// Failing identity instances; only populated when the preconditions
    /// (grading, supercommutativity) hold.
    pub failures: Vec<JordanFailure>,
    /// Whether the identity expansion ran at all.
    pub identity_checked: bool,
    pub instances: usize,
}

impl JordanReport {
    pub fn passed(&self) -> bool {
        self.grading_violations.is_empty()
            && self.supercommutativity_violations.is_empty()
            && self.identity_checked
            && self.failures.is_empty()
    }
}

/// Symbolic envelope element: coordinate -> polynomial in the three
/// auxiliary indeterminates.
type SymElem = BTreeMap<usize, SparsePoly>;

fn sym_mul(env: &Superalgebra, x: &SymElem, y: &SymElem) -> SymElem {
    let mut out: SymElem = BTreeMap::new();
    for (i, f) in x {
        for (j, g) in y {
            let row = env.product_row(*i, *j);
            if row.is_empty() {
                continue;
            }
            let fg = f.mul(g);
            for (k, c) in row {
                let term = fg.scale(c);
                match out.entry(*k) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        if !term.is_zero() {
                            v.insert(term);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&term);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks the Jordan superidentity over the default four-generator envelope.
pub fn check_jordan_super(a: &Superalgebra) -> JordanReport {
    check_jordan_super_with(a, 4)
}

/// Same check over a configurable number of Grassmann generators (>= 4),
/// kept adjustable so the slot argument can be audited with more room.
pub fn check_jordan_super_with(a: &Superalgebra, n_generators: usize) -> JordanReport {
    assert!(n_generators >= 4, "four argument slots need at least four generators");
    let grading_violations = a.validate_grading();
    let supercommutativity_violations = if grading_violations.is_empty() {
        a.check_supercommutative()
    } else {
        Vec::new()
    };
    if !grading_violations.is_empty() || !supercommutativity_violations.is_empty() {
        return JordanReport {
            grading_violations,
            supercommutativity_violations,
            failures: Vec::new(),
            identity_checked: false,
            instances: 0,
        };
    }

    let env = GrassmannEnvelope::new(a, n_generators);
    let field = a.field();
    let n = a.dim();
    let mut failures = Vec::new();
    let mut instances = 0;

    let slot_mask = |slot: usize, base: usize| -> u64 {
        match a.parity(base) {
            Parity::Odd => 1u64 << slot,
            Parity::Even => 0,
        }
    };

    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let even_cube = i == j && j == k && a.parity(i) == Parity::Even;
                for l in 0..n {
                    instances += 1;
                    let y_coord = env
                        .index_of(slot_mask(3, l), l)
                        .expect("y slot embeds");
                    if even_cube {
                        // unpolarized instance: x = 1 (x) b_i
                        let alg = env.algebra();
                        let x = alg.basis_element(env.index_of(0, i).expect("even embeds"));
                        let y = alg.basis_element(y_coord);
                        let sq = alg.mul(&x, &x);
                        let lhs = alg.mul(&alg.mul(&sq, &y), &x);
                        let rhs = alg.mul(&sq, &alg.mul(&y, &x));
                        let d = lhs.sub(&rhs);
                        for (coord, c) in d.coeffs().iter().enumerate() {
                            if !c.is_zero() {
                                failures.push(JordanFailure {
                                    x_triple: [i, j, k],
                                    y: l,
                                    envelope_coord: coord,
                                    residual: c.clone(),
                                });
                            }
                        }
                        continue;
                    }

                    // slot-distinct embedding with one indeterminate per slot
                    let mut x: SymElem = BTreeMap::new();
                    for (slot, base) in [i, j, k].into_iter().enumerate() {
                        let coord = env
                            .index_of(slot_mask(slot, base), base)
                            .expect("x slot embeds");
                        let lambda = SparsePoly::var(field, 3, slot);
                        match x.entry(coord) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(lambda);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                let s = o.get().add(&lambda);
                                *o.get_mut() = s;
                            }
                        }
                    }
                    let mut y: SymElem = BTreeMap::new();
                    y.insert(y_coord, SparsePoly::constant(field.one(), 3));

                    let alg = env.algebra();
                    let sq = sym_mul(alg, &x, &x);
                    let yx = sym_mul(alg, &y, &x);
                    let lhs = sym_mul(alg, &sym_mul(alg, &sq, &y), &x);
                    let rhs = sym_mul(alg, &sq, &yx);

                    let multilinear = [1u32, 1, 1];
                    let mut coords: Vec<usize> = lhs.keys().chain(rhs.keys()).copied().collect();
                    coords.sort_unstable();
                    coords.dedup();
                    for coord in coords {
                        let zero = SparsePoly::zero(field, 3);
                        let lv = lhs.get(&coord).unwrap_or(&zero).coeff(&multilinear);
                        let rv = rhs.get(&coord).unwrap_or(&zero).coeff(&multilinear);
                        let d = &lv - &rv;
                        if !d.is_zero() {
                            failures.push(JordanFailure {
                                x_triple: [i, j, k],
                                y: l,
                                envelope_coord: coord,
                                residual: d,
                            });
                        }
                    }
                }
            }
        }
    }

    JordanReport {
        grading_violations,
        supercommutativity_violations,
        failures,
        identity_checked: true,
        instances,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn one_dimensional_idempotent_passes() {
        let a = Superalgebra::new(
            f3(),
            vec![Parity::Even],
            vec!["e".into()],
            vec![(0, 0, 0, f3().one())],
        )
        .unwrap();
        let report = check_jordan_super(&a);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn empty_table_passes() {
        let a = Superalgebra::new(f3(), vec![Parity::Even, Parity::Odd], vec!["a".into(), "m".into()], vec![])
            .unwrap();
        assert!(check_jordan_super(&a).passed());
    }

    #[test]
    fn commutative_non_jordan_fails_in_char_three() {
        // a*a = b, a*b = b*a = a, b*b = 0 is commutative but
        // ((a^2)a)a - a^2(a a) = a*a - b*b = b != 0; only the unpolarized
        // even-cube instance can see this over GF(3)
        let f = f3();
        let a = Superalgebra::new(
            f,
            vec![Parity::Even, Parity::Even],
            vec!["a".into(), "b".into()],
            vec![
                (0, 0, 1, f.one()),
                (0, 1, 0, f.one()),
                (1, 0, 0, f.one()),
            ],
        )
        .unwrap();
        let report = check_jordan_super(&a);
        assert!(report.identity_checked);
        assert!(!report.failures.is_empty());
        assert!(report
            .failures
            .iter()
            .any(|fl| fl.x_triple == [0, 0, 0]));
    }

    #[test]
    fn grading_violation_stops_identity_check() {
        let f = f3();
        // odd * odd landing on an odd target
        let a = Superalgebra::new(
            f,
            vec![Parity::Odd, Parity::Odd],
            vec!["z".into(), "w".into()],
            vec![(0, 1, 0, f.one())],
        )
        .unwrap();
        let report = check_jordan_super(&a);
        assert!(!report.identity_checked);
        assert!(!report.grading_violations.is_empty());
        assert!(!report.passed());
    }
}
