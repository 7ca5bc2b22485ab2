use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    /// `(prime, exponent)` with primes ascending.
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= num_traits::pow(p.clone(), *e as usize);
        }
        n
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

fn default_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(DEFAULT_TRIAL_BOUND))
}

pub fn factor_integer(n: &BigInt) -> Result<Factorization> {
    factor_integer_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// Trial division by primes up to `bound`. A leftover cofactor is accepted
/// when it is below `bound^2` or passes Miller-Rabin; otherwise the call fails.
pub fn factor_integer_with_bound(n: &BigInt, bound: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero("factor_integer"));
    }
    let owned;
    let primes: &[u64] = if bound == DEFAULT_TRIAL_BOUND {
        default_primes()
    } else {
        owned = primes_up_to(bound);
        &owned
    };
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors = Vec::new();
    for &p in primes {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    if !m.is_one() {
        let b = BigInt::from(bound);
        if m <= &b * &b || is_probable_prime(&m) {
            factors.push((m, 1));
        } else {
            return Err(Error::FactorizationLimit { bound, cofactor: m.to_string() });
        }
    }
    Ok(Factorization { sign, factors })
}

pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &b in &BASES {
        if *n == BigInt::from(b) {
            return true;
        }
        if (n % b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &b in &BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Square root modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Solves `x^2 + 3 y^2 = p` for a prime `p ≡ 1 mod 3` with `x, y > 0` (Cornacchia).
pub fn two_squares_plus_three(p: u64) -> Option<(u64, u64)> {
    if p % 3 != 1 {
        return None;
    }
    let mut r0 = sqrt_mod_prime(p - 3, p)?;
    if r0 <= p / 2 {
        r0 = p - r0;
    }
    let (mut a, mut b) = (p, r0);
    while (b as u128) * (b as u128) > p as u128 {
        let r = a % b;
        a = b;
        b = r;
    }
    let x = b;
    let rest = p.checked_sub(x * x)?;
    if rest % 3 != 0 {
        return None;
    }
    let y2 = rest / 3;
    let y = (y2 as f64).sqrt().round() as u64;
    for y in y.saturating_sub(1)..=y + 1 {
        if y * y == y2 && y > 0 {
            return Some((x, y));
        }
    }
    None
}

pub fn to_u64(n: &BigInt) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("prime {n} exceeds 64 bits")))
}
