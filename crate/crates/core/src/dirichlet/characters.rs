use crate::error::{invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const MAX_CHARACTER_MODULUS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A Dirichlet character mod q.
///
/// Values are stored as exponents: χ(r) = exp(2πi · e(r) / m) on residues
/// coprime to q, where m is the exponent of the character group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    pub q: u64,
    /// Position in the lexicographic enumeration; 0 is the principal character.
    pub index: usize,
    /// m, the common order all values are m-th roots of unity of.
    pub root_order: u32,
    exponents: Vec<Option<u32>>,
    pub parity: Parity,
    pub conductor: u64,
    pub primitive: bool,
}

impl DirichletCharacter {
    /// χ(n), zero when gcd(n, q) > 1.
    pub fn value(&self, n: u64) -> Complex64 {
        match self.exponents[(n % self.q) as usize] {
            None => Complex64::new(0.0, 0.0),
            Some(e) => root_of_unity(e, self.root_order),
        }
    }

    /// χ(0), χ(1), …, χ(q − 1).
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.q).map(|n| self.value(n)).collect()
    }

    /// Exponent of χ(n) as an m-th root of unity, `None` off the unit group.
    pub fn exponent(&self, n: u64) -> Option<u32> {
        self.exponents[(n % self.q) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().flatten().all(|&e| e == 0)
    }

    pub fn is_real(&self) -> bool {
        self.exponents.iter().flatten().all(|&e| (2 * e) % self.root_order == 0)
    }

    /// Order of χ in the character group.
    pub fn order(&self) -> u32 {
        let g = self.exponents.iter().flatten().fold(self.root_order, |g, &e| gcd(g as u64, e as u64) as u32);
        self.root_order / g
    }

    pub fn conj(&self) -> DirichletCharacter {
        let m = self.root_order;
        let mut c = self.clone();
        for e in c.exponents.iter_mut().flatten() {
            *e = (m - *e) % m;
        }
        c
    }

    /// τ(χ) = Σₐ χ(a) e^{2πia/q}.
    pub fn gauss_sum(&self) -> Complex64 {
        (1..self.q).map(|a| self.value(a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / self.q as f64)).sum()
    }
}

fn root_of_unity(e: u32, m: u32) -> Complex64 {
    // Exact values at the quarter turns keep real characters exactly real.
    let e = e % m;
    if (4 * e).is_multiple_of(m) {
        return match 4 * e / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / m as f64)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

/// One cyclic factor of (Z/qZ)^×, generated by g mod `modulus` with the given
/// order; `log[r]` is the discrete log of r to base g.
struct Cyclic {
    modulus: u64,
    order: u64,
    log: Vec<Option<u64>>,
}

impl Cyclic {
    fn new(modulus: u64, g: u64, order: u64) -> Self {
        let mut log = vec![None; modulus as usize];
        let mut x = 1 % modulus;
        for k in 0..order {
            log[x as usize] = Some(k);
            x = x * g % modulus;
        }
        Cyclic { modulus, order, log }
    }
}

type Factor = (Cyclic, fn(u64, u64) -> u64);

/// The cyclic factors of (Z/p^e Z)^× and a map from residues to their logs.
fn prime_power_factors(p: u64, e: u32) -> Vec<Factor> {
    let m = p.pow(e);
    if p == 2 {
        return match e {
            1 => Vec::new(),
            2 => vec![(Cyclic::new(4, 3, 2), |r, _| r)],
            _ => vec![
                // r ≡ (−1)^a · 5^b (mod 2^e): a from r mod 4, b from the rest.
                (Cyclic::new(4, 3, 2), |r, _| r % 4),
                (Cyclic::new(m, 5, m / 4), |r, m| if r % 4 == 1 { r } else { (m - r) % m }),
            ],
        };
    }
    let phi = m / p * (p - 1);
    let g = (2..m)
        .find(|&g| g % p != 0 && multiplicative_order(g, m) == phi)
        .expect("odd prime powers have primitive roots");
    vec![(Cyclic::new(m, g, phi), |r, _| r)]
}

/// All φ(q) characters mod q, principal first.
pub fn characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    if !(3..=MAX_CHARACTER_MODULUS).contains(&q) {
        return Err(invalid("q", format!("need 3 <= q <= {MAX_CHARACTER_MODULUS}, got {q}")));
    }
    let mut factors = Vec::new();
    for (p, e) in factor(q) {
        factors.extend(prime_power_factors(p, e));
    }
    let root_order = factors.iter().fold(1, |m, (c, _)| lcm(m, c.order)) as u32;

    // logs[r][i]: discrete log of r in factor i.
    let logs: Vec<Option<Vec<u64>>> = (0..q)
        .map(|r| {
            if gcd(r, q) != 1 {
                return None;
            }
            Some(
                factors
                    .iter()
                    .map(|(c, reduce)| {
                        let x = reduce(r % c.modulus, c.modulus);
                        c.log[x as usize].expect("unit has a discrete log")
                    })
                    .collect(),
            )
        })
        .collect();

    let orders: Vec<u64> = factors.iter().map(|(c, _)| c.order).collect();
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        // Lexicographic: the last factor varies fastest.
        let mut ks = vec![0u64; orders.len()];
        let mut rest = idx;
        for i in (0..orders.len()).rev() {
            ks[i] = rest % orders[i];
            rest /= orders[i];
        }
        let exponents: Vec<Option<u32>> = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|l| {
                    let s: u64 = l
                        .iter()
                        .zip(&ks)
                        .zip(&orders)
                        .map(|((&lg, &k), &o)| lg * k % o * (root_order as u64 / o))
                        .sum();
                    (s % root_order as u64) as u32
                })
            })
            .collect();
        out.push(finish(q, idx as usize, root_order, exponents));
    }
    Ok(out)
}

fn finish(q: u64, index: usize, root_order: u32, exponents: Vec<Option<u32>>) -> DirichletCharacter {
    let minus_one = exponents[(q - 1) as usize].expect("q - 1 is a unit");
    let parity = if minus_one == 0 { Parity::Even } else { Parity::Odd };
    let conductor = (1..=q)
        .filter(|d| q.is_multiple_of(*d))
        .find(|&d| (1..q).filter(|&r| r % d == 1 % d).all(|r| exponents[r as usize].is_none_or(|e| e == 0)))
        .expect("q itself is a period");
    DirichletCharacter { q, index, root_order, exponents, parity, conductor, primitive: conductor == q }
}

/// The character mod q whose values on 1..q are ±1 or 0 and match `values`;
/// convenient for naming the quadratic characters.
pub fn character_by_values(q: u64, values: &[i32]) -> Result<DirichletCharacter> {
    characters(q)?
        .into_iter()
        .find(|c| {
            values.iter().enumerate().all(|(n, &v)| (c.value(n as u64) - Complex64::new(v as f64, 0.0)).norm() < 1e-12)
        })
        .ok_or_else(|| invalid("values", format!("no character mod {q} has values {values:?}")))
}
