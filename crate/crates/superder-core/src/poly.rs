//! Sparse multivariate polynomials with exact coefficients.
//!
//! Used in two places: the Jordan-superidentity checker expands formal
//! coefficients in auxiliary commuting indeterminates, and the parametric
//! delta scan eliminates matrices whose entries are univariate polynomials
//! in delta over the rationals. Terms are keyed by exponent vector in a
//! `BTreeMap`, so iteration order (and rendering) is lexicographic and
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalars::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl SparsePoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        SparsePoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut poly = SparsePoly::zero(c.field(), nvars);
        poly.add_term(vec![0; nvars], c);
        poly
    }

    /// The monomial x_i (0-based variable index).
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut poly = SparsePoly::zero(field, nvars);
        poly.add_term(exp, field.one());
        poly
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Scalar) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &SparsePoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.field, other.field, "polynomial field mismatch");
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.field, self.nvars);
        }
        SparsePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check_compatible(other);
        let mut out = SparsePoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<u32>, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|(e1, _), (e2, _)| {
            let d1: u32 = e1.iter().sum();
            let d2: u32 = e2.iter().sum();
            d2.cmp(&d1).then(e2.cmp(e1))
        });
        let mut out = String::new();
        for (idx, (exp, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e) })
                .collect();
            let cstr = c.to_string();
            let (sign, mag) = match cstr.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cstr),
            };
            if idx == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Univariate view: degree in the single variable.
impl SparsePoly {
    pub fn degree_univar(&self) -> u32 {
        assert_eq!(self.nvars, 1);
        self.terms.keys().map(|e| e[0]).max().unwrap_or(0)
    }

    pub fn eval_univar(&self, x: &Scalar) -> Scalar {
        assert_eq!(self.nvars, 1);
        // Horner over the dense coefficient list.
        let deg = self.degree_univar();
        let mut acc = self.field.zero();
        for d in (0..=deg).rev() {
            acc = &(&acc * x) + &self.coeff(&[d]);
        }
        acc
    }

    /// Exact univariate division; `None` when the remainder is nonzero.
    pub fn div_exact_univar(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        self.check_compatible(divisor);
        assert_eq!(self.nvars, 1);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree_univar();
        let dlead = divisor.coeff(&[dd]);
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.field, 1);
        while !rem.is_zero() {
            let rd = rem.degree_univar();
            if rd < dd {
                return None;
            }
            let factor = rem.coeff(&[rd]).div(&dlead).expect("nonzero leading coefficient");
            let mut term = SparsePoly::zero(self.field, 1);
            term.add_term(vec![rd - dd], factor);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
            // the leading term cancels exactly, so the degree strictly drops
            debug_assert!(rem.is_zero() || rem.degree_univar() < rd);
        }
        Some(quot)
    }
}

/// All rational roots of a nonzero univariate polynomial over Q, plus a flag
/// for whether a nonconstant factor without rational roots remains. Found by
/// the rational root theorem on the integer-normalized polynomial.
pub fn rational_roots(poly: &SparsePoly) -> (Vec<BigRational>, bool) {
    assert_eq!(poly.nvars(), 1);
    assert_eq!(poly.field(), Field::Rational);
    assert!(!poly.is_zero(), "rational_roots of the zero polynomial");

    let mut roots: Vec<BigRational> = Vec::new();

    // integer-normalize: coefficient list scaled by the lcm of denominators
    let deg = poly.degree_univar() as usize;
    let mut coeffs: Vec<BigRational> = (0..=deg).map(|d| poly.coeff(&[d as u32]).as_rational().clone()).collect();
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut int_coeffs: Vec<BigInt> =
        coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();

    // factor out x^k: 0 is a root iff the trailing coefficient vanishes
    let low = int_coeffs.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if low > 0 {
        roots.push(BigRational::zero());
        int_coeffs.drain(..low);
    }
    if int_coeffs.len() <= 1 {
        return (roots, false);
    }

    let trailing = int_coeffs[0].magnitude().clone();
    let leading = int_coeffs[int_coeffs.len() - 1].magnitude().clone();
    let p_divs = divisors(&trailing);
    let q_divs = divisors(&leading);

    let mut candidates: Vec<BigRational> = Vec::new();
    for p in &p_divs {
        for q in &q_divs {
            let r = BigRational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();

    // test candidates against the deflated polynomial
    coeffs = int_coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let eval = |cs: &[BigRational], x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in cs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for r in candidates {
        if eval(&coeffs, &r).is_zero() {
            roots.push(r.clone());
            // divide out (x - r) to full multiplicity
            loop {
                let next = synthetic_divide(&coeffs, &r);
                match next {
                    Some(q) => coeffs = q,
                    None => break,
                }
                if coeffs.len() <= 1 || !eval(&coeffs, &r).is_zero() {
                    break;
                }
            }
        }
    }

    roots.sort();
    roots.dedup();
    let residual_nonconstant = coeffs.len() > 1;
    (roots, residual_nonconstant)
}

/// Divides by (x - r); requires r to be a root (remainder must vanish).
fn synthetic_divide(coeffs: &[BigRational], r: &BigRational) -> Option<Vec<BigRational>> {
    let n = coeffs.len();
    if n <= 1 {
        return None;
    }
    let mut quot = vec![BigRational::zero(); n - 1];
    let mut carry = coeffs[n - 1].clone();
    for d in (0..n - 1).rev() {
        quot[d] = carry.clone();
        carry = coeffs[d].clone() + carry * r;
    }
    if carry.is_zero() {
        Some(quot)
    } else {
        None
    }
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    assert!(!n.is_zero());
    let factors = factorize(n.clone());
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pe = BigUint::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pe);
            }
            pe *= &p;
        }
        divs = next;
        assert!(divs.len() <= 1 << 20, "divisor enumeration beyond desk scale");
    }
    divs.sort();
    divs
}

fn factorize(mut n: BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_one() {
        return out;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let p = BigUint::from(small);
        while (&n % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            n /= &p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return crate::scalars::is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = &one + &one;
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        let a = BigUint::from(a) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = &one + &one;
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let f = |v: &BigUint, c: &BigUint| (v * v + c) % n;
        while d.is_one() {
            x = f(&x, &c);
            y = f(&f(&y, &c), &c);
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += &one;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rational()
    }

    fn upoly(coeffs: &[i64]) -> SparsePoly {
        // coeffs[d] is the coefficient of x^d
        let mut p = SparsePoly::zero(q(), 1);
        for (d, &c) in coeffs.iter().enumerate() {
            p = p.add(&SparsePoly::constant(q().from_i64(c), 1).mul(&pow_x(d as u32)));
        }
        p
    }

    fn pow_x(d: u32) -> SparsePoly {
        let x = SparsePoly::var(q(), 1, 0);
        let mut acc = SparsePoly::constant(q().one(), 1);
        for _ in 0..d {
            acc = acc.mul(&x);
        }
        acc
    }

    #[test]
    fn difference_of_squares() {
        let f = q();
        let x1 = SparsePoly::var(f, 2, 0);
        let x2 = SparsePoly::var(f, 2, 1);
        let prod = x1.add(&x2).mul(&x1.sub(&x2));
        let expect = x1.mul(&x1).sub(&x2.mul(&x2));
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_by_zero() {
        let f = q();
        let x1 = SparsePoly::var(f, 2, 0);
        assert!(x1.mul(&SparsePoly::zero(f, 2)).is_zero());
    }

    #[test]
    fn frobenius_cube_over_gf3() {
        // (x+1)^3 = x^3 + 1 over GF(3): middle binomials vanish
        let f3 = Field::prime(3).unwrap();
        let x = SparsePoly::var(f3, 1, 0);
        let xp1 = x.add(&SparsePoly::constant(f3.one(), 1));
        let cube = xp1.mul(&xp1).mul(&xp1);
        let expect = x.mul(&x).mul(&x).add(&SparsePoly::constant(f3.one(), 1));
        assert_eq!(cube, expect);
    }

    #[test]
    fn is_zero_cases() {
        let f = q();
        assert!(SparsePoly::zero(f, 2).is_zero());
        let x1 = SparsePoly::var(f, 2, 0);
        assert!(x1.sub(&x1).is_zero());
        let x2 = SparsePoly::var(f, 2, 1);
        assert!(!x1.mul(&x1).sub(&x2).is_zero());
    }

    #[test]
    fn render_examples() {
        let p = upoly(&[-1, 0, 1]);
        assert_eq!(p.render(&["d"]), "d^2 - 1");
        let zero = SparsePoly::zero(q(), 1);
        assert_eq!(zero.render(&["d"]), "0");
        let c = upoly(&[3]);
        assert_eq!(c.render(&["d"]), "3");
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let f = upoly(&[-1, 0, 1]);
        let g = upoly(&[-1, 1]);
        assert_eq!(f.div_exact_univar(&g).unwrap(), upoly(&[1, 1]));
        // x^2 + 1 is not divisible by x - 1
        assert!(upoly(&[1, 0, 1]).div_exact_univar(&g).is_none());
    }

    #[test]
    fn rational_roots_examples() {
        // x^2 - 1: roots {-1, 1}
        let (roots, residual) = rational_roots(&upoly(&[-1, 0, 1]));
        let as_str: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(as_str, vec!["-1", "1"]);
        assert!(!residual);

        // 2x^2 - x: roots {0, 1/2}
        let (roots, residual) = rational_roots(&upoly(&[0, -1, 2]));
        let as_str: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(as_str, vec!["0", "1/2"]);
        assert!(!residual);

        // x^2 + 1: no rational roots, residual remains
        let (roots, residual) = rational_roots(&upoly(&[1, 0, 1]));
        assert!(roots.is_empty());
        assert!(residual);

        // (x^2 - 2)(x - 3): rational root 3, irrational residual
        let f = upoly(&[-2, 0, 1]).mul(&upoly(&[-3, 1]));
        let (roots, residual) = rational_roots(&f);
        let as_str: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(as_str, vec!["3"]);
        assert!(residual);

        // constant has no roots
        let (roots, residual) = rational_roots(&upoly(&[5]));
        assert!(roots.is_empty());
        assert!(!residual);
    }

    #[test]
    fn big_coefficient_roots() {
        // (x - 1024)(x - 59049): divisor enumeration goes through factorization
        let f = upoly(&[-1024, 1]).mul(&upoly(&[-59049, 1]));
        let (roots, residual) = rational_roots(&f);
        let as_str: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(as_str, vec!["1024", "59049"]);
        assert!(!residual);
    }

    fn arb_poly(field: Field, nvars: usize) -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, nvars), -6i64..=6), 0..6).prop_map(
            move |terms| {
                let mut p = SparsePoly::zero(field, nvars);
                for (e, c) in terms {
                    p = p.add(&SparsePoly::constant(field.from_i64(c), nvars).mul(&monomial(field, e)));
                }
                p
            },
        )
    }

    fn monomial(field: Field, exp: Vec<u32>) -> SparsePoly {
        let nvars = exp.len();
        let mut acc = SparsePoly::constant(field.one(), nvars);
        for (i, &e) in exp.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&SparsePoly::var(field, nvars, i));
            }
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn ring_axioms((f, g, h) in (arb_poly(Field::Rational, 2), arb_poly(Field::Rational, 2), arb_poly(Field::Rational, 2))) {
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.sub(&f), SparsePoly::zero(Field::Rational, 2));
        }

        #[test]
        fn monomial_degree_additivity(e1 in prop::collection::vec(0u32..5, 3), e2 in prop::collection::vec(0u32..5, 3)) {
            let f = Field::rational();
            let m1 = monomial(f, e1.clone());
            let m2 = monomial(f, e2.clone());
            prop_assert_eq!(m1.mul(&m2).total_degree(), m1.total_degree() + m2.total_degree());
        }
    }
}
