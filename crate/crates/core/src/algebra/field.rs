//! Small finite fields F_q with full operation tables.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of the residue polynomial. The modulus polynomials for the
//! catalog fields are pinned so group constructions are bit-reproducible;
//! irreducibility is re-checked on every construction.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power with exponent ≤ 4 and size ≤ 256")]
    UnsupportedSize(u64),
    #[error("modulus polynomial for q={0} is reducible")]
    ReducibleModulus(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
}

/// Pinned irreducible polynomials, low-degree coefficient first, monic part
/// implicit. `x^2+x+1`, `x^3+x+1`, `x^2+1`, `x^4+x+1`, `x^2-x+2 = x^2+4x+2`.
fn pinned_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    match (p, e) {
        (2, 2) => Some(vec![1, 1]),
        (2, 3) => Some(vec![1, 1, 0]),
        (3, 2) => Some(vec![1, 0]),
        (2, 4) => Some(vec![1, 1, 0, 0]),
        (5, 2) => Some(vec![2, 4]),
        _ => None,
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over F_p on little-endian coefficient vectors.
mod poly {
    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let factor = a[da] * lead_inv % p;
            if factor != 0 {
                for i in 0..=db {
                    let idx = da - db + i;
                    a[idx] = (a[idx] + p - factor * b[i] % p) % p;
                }
            }
            a.pop();
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is a small prime
        let mut x = 1u32;
        loop {
            if a * x % p == 1 {
                return x;
            }
            x += 1;
        }
    }
}

/// A finite field F_q with complete addition/multiplication tables, log
/// tables for a verified primitive element, and the Frobenius map.
pub struct FieldTable {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
    /// log[x] for x ≠ 0: exponent of the primitive element
    log: Vec<u16>,
    exp: Vec<u16>,
    frob: Vec<u16>,
}

impl FieldTable {
    pub fn new(q: u64) -> Result<FieldTable, FieldError> {
        if q < 2 || q > 256 {
            return Err(FieldError::UnsupportedSize(q));
        }
        let q = q as u32;
        let (p, e) = factor_prime_power(q).ok_or(FieldError::UnsupportedSize(q as u64))?;
        if e > 4 {
            return Err(FieldError::UnsupportedSize(q as u64));
        }
        let modulus = if e == 1 {
            vec![0] // unused for prime fields
        } else {
            let mut full = match pinned_modulus(p, e) {
                Some(low) => low,
                None => search_irreducible(p, e).ok_or(FieldError::UnsupportedSize(q as u64))?,
            };
            full.push(1); // monic leading coefficient
            if !is_irreducible(&full, p) {
                return Err(FieldError::ReducibleModulus(q as u64));
            }
            full
        };
        let mut table = FieldTable {
            q,
            p,
            e,
            modulus,
            add: vec![0; (q * q) as usize],
            mul: vec![0; (q * q) as usize],
            neg: vec![0; q as usize],
            inv: vec![0; q as usize],
            primitive: 0,
            log: vec![0; q as usize],
            exp: vec![0; (q - 1) as usize],
            frob: vec![0; q as usize],
        };
        table.fill_tables();
        table.find_primitive()?;
        for x in 0..q {
            table.frob[x as usize] = table.pow(x as u16, p as u64);
        }
        Ok(table)
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut x = x;
        for _ in 0..self.e {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn undigits(&self, v: &[u32]) -> u32 {
        let mut x = 0;
        for &c in v.iter().rev() {
            x = x * self.p + c;
        }
        x
    }

    fn fill_tables(&mut self) {
        let q = self.q;
        for a in 0..q {
            let da = self.digits(a);
            for b in 0..q {
                let db = self.digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
                self.add[(a * q + b) as usize] = self.undigits(&sum) as u16;
                // polynomial product reduced mod the modulus
                let mut prod = vec![0u32; (2 * self.e) as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % self.p;
                    }
                }
                let reduced = if self.e == 1 {
                    vec![prod[0]]
                } else {
                    let mut r = poly::rem(poly::trim(prod), &self.modulus, self.p);
                    r.resize(self.e as usize, 0);
                    r
                };
                self.mul[(a * q + b) as usize] = self.undigits(&reduced) as u16;
            }
            let neg: Vec<u32> = da.iter().map(|&x| (self.p - x) % self.p).collect();
            self.neg[a as usize] = self.undigits(&neg) as u16;
        }
        for a in 1..q {
            for b in 1..q {
                if self.mul[(a * q + b) as usize] == 1 {
                    self.inv[a as usize] = b as u16;
                    break;
                }
            }
        }
    }

    fn find_primitive(&mut self) -> Result<(), FieldError> {
        for cand in 2..self.q.max(3) {
            if cand >= self.q {
                break;
            }
            let mut pow = 1u16;
            let mut order = 0u32;
            loop {
                pow = self.mul(pow, cand as u16);
                order += 1;
                if pow == 1 {
                    break;
                }
            }
            if order == self.q - 1 {
                self.primitive = cand as u16;
                let mut pow = 1u16;
                for k in 0..(self.q - 1) {
                    self.exp[k as usize] = pow;
                    self.log[pow as usize] = k as u16;
                    pow = self.mul(pow, cand as u16);
                }
                return Ok(());
            }
        }
        // q = 2: the only unit is 1, of order 1 = q − 1
        if self.q == 2 {
            self.primitive = 1;
            self.exp[0] = 1;
            self.log[1] = 0;
            return Ok(());
        }
        Err(FieldError::UnsupportedSize(self.q as u64))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn modulus_coeffs(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[(a as u32 * self.q + b as u32) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[(a as u32 * self.q + b as u32) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u16) -> Result<u16, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero(self.q as u64));
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: u16, k: u64) -> u16 {
        let mut acc = 1u16;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The designated primitive element λ.
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    /// Frobenius x ↦ x^p.
    pub fn frobenius(&self, a: u16) -> u16 {
        self.frob[a as usize]
    }

    /// x ↦ x^{p^j}.
    pub fn frobenius_iter(&self, a: u16, j: u32) -> u16 {
        let mut x = a;
        for _ in 0..j {
            x = self.frobenius(x);
        }
        x
    }

    /// Exhaustive field-axiom check: associativity, commutativity,
    /// distributivity, identities, inverses, and the primitive element's
    /// order. Intended for catalog-sized fields.
    pub fn verify_axioms(&self) -> Result<(), String> {
        let q = self.q as u16;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv(a).unwrap()) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut pow = 1u16;
        let mut order = 0u32;
        loop {
            pow = self.mul(pow, self.primitive);
            order += 1;
            if pow == 1 {
                break;
            }
        }
        if order != self.q - 1 {
            return Err(format!("primitive element has order {order}"));
        }
        // Frobenius is an automorphism
        for a in 0..q {
            for b in 0..q {
                if self.frobenius(self.add(a, b)) != self.add(self.frobenius(a), self.frobenius(b))
                    || self.frobenius(self.mul(a, b))
                        != self.mul(self.frobenius(a), self.frobenius(b))
                {
                    return Err(format!("Frobenius not a homomorphism at ({a},{b})"));
                }
            }
        }
        Ok(())
    }
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    for p in 2..=q {
        if is_prime(p) && q % p == 0 {
            let mut e = 0;
            let mut n = q;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            return if n == 1 { Some((p, e)) } else { None };
        }
    }
    None
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // linear factors
    for r in 0..p {
        let mut val = 0u32;
        for &c in f.iter().rev() {
            val = (val * r + c) % p;
        }
        if val == 0 {
            return false;
        }
    }
    if deg <= 3 {
        return true;
    }
    // degree 4: also exclude quadratic factors
    for b in 0..p {
        for c in 0..p {
            let g = vec![c, b, 1];
            if poly::rem(f.to_vec(), &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn search_irreducible(p: u32, e: u32) -> Option<Vec<u32>> {
    let total = (p as u64).pow(e);
    for code in 0..total {
        let mut low = Vec::with_capacity(e as usize);
        let mut c = code;
        for _ in 0..e {
            low.push((c % p as u64) as u32);
            c /= p as u64;
        }
        let mut full = low.clone();
        full.push(1);
        if is_irreducible(&full, p) {
            return Some(low);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_is_integers_mod_p() {
        let f7 = FieldTable::new(7).unwrap();
        for a in 0..7u16 {
            for b in 0..7u16 {
                assert_eq!(f7.add(a, b), (a + b) % 7);
                assert_eq!(f7.mul(a, b), (a * b) % 7);
            }
        }
        f7.verify_axioms().unwrap();
    }

    #[test]
    fn f8_primitive_element_has_seven_distinct_powers() {
        let f8 = FieldTable::new(8).unwrap();
        assert_eq!(f8.modulus_coeffs(), &[1, 1, 0, 1]); // x³+x+1
        let lambda = f8.primitive();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = 1u16;
        for _ in 0..7 {
            x = f8.mul(x, lambda);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 7);
        f8.verify_axioms().unwrap();
    }

    #[test]
    fn f9_multiplicative_group_order_eight() {
        let f9 = FieldTable::new(9).unwrap();
        assert_eq!(f9.modulus_coeffs(), &[1, 0, 1]); // x²+1
        f9.verify_axioms().unwrap();
        let lambda = f9.primitive();
        assert_eq!(f9.pow(lambda, 8), 1);
        assert_ne!(f9.pow(lambda, 4), 1);
    }

    #[test]
    fn catalog_fields_verify_exhaustively() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 13, 16, 25] {
            FieldTable::new(q).unwrap().verify_axioms().unwrap();
        }
    }

    #[test]
    fn frobenius_fixed_field_is_prime_field() {
        let f25 = FieldTable::new(25).unwrap();
        let fixed: Vec<u16> = (0..25u16).filter(|&x| f25.frobenius(x) == x).collect();
        assert_eq!(fixed.len(), 5);
    }

    #[test]
    fn non_prime_powers_rejected() {
        assert!(FieldTable::new(6).is_err());
        assert!(FieldTable::new(12).is_err());
        assert!(FieldTable::new(0).is_err());
        assert!(FieldTable::new(1).is_err());
    }

    #[test]
    fn f25_pinned_modulus_is_irreducible() {
        let f25 = FieldTable::new(25).unwrap();
        assert_eq!(f25.modulus_coeffs(), &[2, 4, 1]); // x²−x+2
        f25.verify_axioms().unwrap();
    }

    #[test]
    fn larger_fields_constructible() {
        for q in [27u64, 49, 81, 121, 125, 169] {
            let f = FieldTable::new(q).unwrap();
            assert_eq!(f.pow(f.primitive(), (q - 1) as u64), 1);
            assert_ne!(f.pow(f.primitive(), (q - 1) as u64 / 2), 1);
        }
        // exponent above 4 is out of contract
        assert!(FieldTable::new(32).is_err());
        assert!(FieldTable::new(256).is_err());
    }
}
