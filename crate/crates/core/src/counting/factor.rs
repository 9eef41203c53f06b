use crate::error::{Error, Result};

/// Smallest-prime-factor sieve.
#[derive(Debug, Clone)]
pub struct FactorTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl FactorTable {
    pub fn new(limit: u64) -> Self {
        let n = limit.max(1) as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let s = spf[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > s || j > n {
                    break;
                }
                spf[j] = p;
            }
        }
        Self { limit: limit.max(1), spf, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit {
            None
        } else {
            Some(self.spf[n as usize] as u64)
        }
    }

    /// Prime factorisation as (p, exponent) pairs in increasing p. Numbers
    /// above the table limit (up to limit^2) are handled by trial division
    /// over the tabulated primes.
    pub fn factorize(&self, mut n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::InvalidInput("cannot factor 0".into()));
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => out.push((p, 1)),
        };
        if n > self.limit {
            if (n as u128) > (self.limit as u128) * (self.limit as u128) {
                return Err(Error::InvalidInput(format!(
                    "{n} exceeds the square of the factor table limit {}",
                    self.limit
                )));
            }
            for &p in &self.primes {
                let p = p as u64;
                if p * p > n || n <= self.limit {
                    break;
                }
                while n.is_multiple_of(p) {
                    n /= p;
                    push(p, &mut out);
                }
            }
            if n > self.limit {
                out.push((n, 1));
                return Ok(out);
            }
        }
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            push(p, &mut out);
        }
        Ok(out)
    }
}

/// Number of (x1, x2) in Z^2 with x1^2 + x2^2 = n.
pub fn r2(n: u64, ft: &FactorTable) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("r2 is not defined at 0".into()));
    }
    let mut count = 4;
    for (p, k) in ft.factorize(n)? {
        match p % 4 {
            1 => count *= k as u64 + 1,
            3 if k % 2 == 1 => return Ok(0),
            _ => {}
        }
    }
    Ok(count)
}
