//! Exact arithmetic in GF(p^a).
//!
//! Elements are encoded as integers in `[0, p^a)`: the base-`p` digits of the
//! encoding are the coefficients of the polynomial representative, constant
//! term first. So in GF(27) built on `x³ − x + 1`, the element `3` is the
//! class of `x`, a root of the modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::FieldError;

/// Field elements are plain encoded integers; the owning [`FiniteField`] is
/// always passed alongside.
pub type Elem = u32;

/// Largest supported field order. Log/antilog tables are built eagerly.
pub const MAX_ORDER: u32 = 19683; // 3^9

/// Fields up to this order also get a full addition table.
const ADD_TABLE_LIMIT: u32 = 729;

/// Square class of a nonzero element of a field of odd order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SquareClass {
    Square,
    NonSquare,
}

impl SquareClass {
    /// Product of classes: the square classes form a group of order two.
    pub fn mul(self, other: SquareClass) -> SquareClass {
        if self == other {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Square => f.write_str("square"),
            SquareClass::NonSquare => f.write_str("nonsquare"),
        }
    }
}

struct FieldData {
    p: u32,
    a: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<Elem>,
    pow_p: Vec<u32>,
}

/// A finite field GF(p^a) with precomputed log/antilog tables.
///
/// Cloning is cheap (shared tables).
#[derive(Clone)]
pub struct FiniteField {
    d: Arc<FieldData>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.d, &other.d) || (self.d.p == other.d.p && self.d.modulus == other.d.modulus)
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.d.p, self.d.a, self.d.modulus)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p).
/// Coefficients constant-first; returns a vector of length `den.len() - 1`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    if r.len() <= dd {
        r.resize(dd, 0);
        return r;
    }
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dd {
            let k = i - dd + j;
            r[k] = (r[k] + (p - c) * den[j]) % p;
        }
    }
    r.truncate(dd);
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let a = modulus.len() - 1;
    // Trial division by every monic polynomial of degree 1..=a/2.
    for deg in 1..=a / 2 {
        let count = p.pow(deg as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut t = low;
            for _ in 0..deg {
                div.push(t % p);
                t /= p;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, a: u32) -> Vec<u32> {
    match (p, a) {
        (_, 1) => vec![0, 1],
        (3, 2) => vec![1, 0, 1],
        (3, 3) => vec![1, 2, 0, 1],
        _ => {
            // First monic irreducible polynomial in encoding order.
            let count = p.pow(a);
            (0..count)
                .map(|low| {
                    let mut m = Vec::with_capacity(a as usize + 1);
                    let mut t = low;
                    for _ in 0..a {
                        m.push(t % p);
                        t /= p;
                    }
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        }
    }
}

impl FiniteField {
    /// GF(p^a) with the default modulus (`x² + 1` for GF(9), `x³ − x + 1` for GF(27)).
    pub fn new(p: u32, a: u32) -> Result<Self, FieldError> {
        Self::with_modulus(p, a, None)
    }

    /// The prime field GF(3), used throughout.
    pub fn gf3() -> Self {
        Self::new(3, 1).expect("GF(3) is valid")
    }

    /// GF(p^a) with an explicit monic modulus given constant term first.
    pub fn with_modulus(p: u32, a: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if a == 0 {
            return Err(FieldError::BadDegree(a));
        }
        let q = p.checked_pow(a).filter(|&q| q <= MAX_ORDER).ok_or(FieldError::TooLarge { p, a })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != a as usize + 1 {
                    return Err(FieldError::WrongDegree { expected: a, got: m.len().saturating_sub(1) as u32 });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadCoefficient);
                }
                if m[a as usize] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if a > 1 && !is_irreducible(m, p) {
                    return Err(FieldError::Reducible(m.to_vec()));
                }
                m.to_vec()
            }
            None => default_modulus(p, a),
        };

        // Plain polynomial multiplication on encodings, used to build tables.
        let decode = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(a as usize);
            let mut t = x;
            for _ in 0..a {
                v.push(t % p);
                t /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let slow_mul = |x: u32, y: u32| -> u32 {
            if a == 1 {
                return x * y % p;
            }
            let (xs, ys) = (decode(x), decode(y));
            let mut prod = vec![0u32; 2 * a as usize - 1];
            for (i, &xi) in xs.iter().enumerate() {
                for (j, &yj) in ys.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + xi * yj) % p;
                }
            }
            encode(&poly_rem(&prod, &modulus, p))
        };

        let order = q - 1;
        let mut prime_factors = Vec::new();
        let mut t = order;
        let mut d = 2;
        while d * d <= t {
            if t % d == 0 {
                prime_factors.push(d);
                while t % d == 0 {
                    t /= d;
                }
            }
            d += 1;
        }
        if t > 1 {
            prime_factors.push(t);
        }
        let slow_pow = |x: u32, mut e: u32| -> u32 {
            let (mut base, mut acc) = (x, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let primitive = (1..q)
            .find(|&g| slow_pow(g, order) == 1 && prime_factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .ok_or(FieldError::NoPrimitive)?;

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            exp[(i + order) as usize] = x;
            log[x as usize] = i;
            x = slow_mul(x, primitive);
        }
        debug_assert_eq!(x, 1);

        let digit_add = |x: u32, y: u32| -> u32 {
            let (mut x, mut y, mut r, mut pw) = (x, y, 0u32, 1u32);
            for _ in 0..a {
                r += ((x % p + y % p) % p) * pw;
                x /= p;
                y /= p;
                pw *= p;
            }
            r
        };
        let neg: Vec<u32> = (0..q)
            .map(|x| {
                let mut t = x;
                let (mut r, mut pw) = (0u32, 1u32);
                for _ in 0..a {
                    r += ((p - t % p) % p) * pw;
                    t /= p;
                    pw *= p;
                }
                r
            })
            .collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut tab = vec![0u16; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    tab[(x * q + y) as usize] = digit_add(x, y) as u16;
                }
            }
            tab
        });
        let pow_p = (0..a).map(|i| p.pow(i)).collect();

        Ok(FiniteField { d: Arc::new(FieldData { p, a, q, modulus, primitive, exp, log, add, neg, pow_p }) })
    }

    pub fn characteristic(&self) -> u32 {
        self.d.p
    }
    pub fn degree(&self) -> u32 {
        self.d.a
    }
    pub fn order(&self) -> u32 {
        self.d.q
    }
    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.d.modulus
    }
    pub fn primitive(&self) -> Elem {
        self.d.primitive
    }
    pub fn is_prime_field(&self) -> bool {
        self.d.a == 1
    }
    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.d.q
    }
    /// Encoding of the prime-field element `n mod p`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.d.p as i64) as Elem
    }
    /// The class of `x` in `GF(p)[x]/(modulus)`; `p` itself when `a > 1`.
    pub fn generator_x(&self) -> Elem {
        if self.d.a == 1 {
            0
        } else {
            self.d.p
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let d = &*self.d;
        if d.a == 1 {
            let s = x + y;
            return if s >= d.p { s - d.p } else { s };
        }
        if let Some(tab) = &d.add {
            return tab[(x * d.q + y) as usize] as Elem;
        }
        let (mut x, mut y, mut r) = (x, y, 0u32);
        for &pw in &d.pow_p {
            r += ((x % d.p + y % d.p) % d.p) * pw;
            x /= d.p;
            y /= d.p;
        }
        r
    }
    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.d.neg[x as usize]
    }
    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        let d = &*self.d;
        d.exp[(d.log[x as usize] + d.log[y as usize]) as usize]
    }
    /// Multiplicative inverse; panics on zero (callers check).
    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        assert!(x != 0, "inverse of zero");
        let d = &*self.d;
        let o = d.q - 1;
        d.exp[((o - d.log[x as usize]) % o) as usize]
    }
    pub fn try_inv(&self, x: Elem) -> Result<Elem, FieldError> {
        if x == 0 {
            Err(FieldError::ZeroDivision)
        } else {
            Ok(self.inv(x))
        }
    }
    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.inv(y))
    }
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let o = (self.d.q - 1) as u64;
        let l = self.d.log[x as usize] as u64;
        self.d.exp[((l * (e % o)) % o) as usize]
    }
    /// Discrete log to the stored primitive element.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x != 0).then(|| self.d.log[x as usize])
    }
    /// `g^i` for the stored primitive element `g`.
    pub fn exp(&self, i: u64) -> Elem {
        self.d.exp[(i % (self.d.q as u64 - 1)) as usize]
    }
    /// Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.d.p as u64)
    }

    /// Absolute trace to GF(p): `Σ_{i<a} x^{p^i}`, returned as an integer in `[0, p)`.
    pub fn trace(&self, x: Elem) -> Elem {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.d.a {
            acc = self.add(acc, y);
            y = self.frobenius(y);
        }
        debug_assert!(acc < self.d.p, "trace must land in the prime field");
        acc
    }

    /// Norm to GF(p): `x^{(q−1)/(p−1)}`.
    pub fn norm(&self, x: Elem) -> Elem {
        let e = (self.d.q - 1) / (self.d.p - 1);
        let n = self.pow(x, e as u64);
        debug_assert!(n < self.d.p);
        n
    }

    /// Square class of a nonzero element (odd characteristic only).
    pub fn square_class(&self, x: Elem) -> Result<SquareClass, FieldError> {
        if self.d.p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if x == 0 {
            return Err(FieldError::ZeroSquareClass);
        }
        Ok(if self.d.log[x as usize] % 2 == 0 { SquareClass::Square } else { SquareClass::NonSquare })
    }

    /// `x^{(q−1)/2} == 1`, the Euler criterion; used as an independent check.
    pub fn euler_criterion(&self, x: Elem) -> bool {
        self.pow(x, ((self.d.q - 1) / 2) as u64) == 1
    }

    /// Some fixed non-square, the first in encoding order.
    pub fn nonsquare(&self) -> Elem {
        self.elements().skip(1).find(|&x| self.d.log[x as usize] % 2 == 1).expect("odd-order fields have non-squares")
    }

    /// `2⁻¹`, needed for `Q(v) = 2⁻¹ f(v,v)`.
    pub fn half(&self) -> Elem {
        self.inv(self.from_int(2))
    }

    /// Base-p digits of an element (polynomial coefficients, constant first).
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut t = x;
        (0..self.d.a)
            .map(|_| {
                let c = t % self.d.p;
                t /= self.d.p;
                c
            })
            .collect()
    }
    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits.iter().rev().fold(0, |acc, &c| acc * self.d.p + c)
    }
}
