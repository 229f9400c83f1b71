//! Bitset sieve of squarefree integers, used by the enumeration and
//! density code to avoid per-value factorization.

/// Squarefree flags for 0..=limit, packed one bit per integer.
pub struct SquarefreeSieve {
    bits: Vec<u64>,
    limit: u64,
}

impl SquarefreeSieve {
    pub fn new(limit: u64) -> SquarefreeSieve {
        let words = (limit as usize + 64) / 64;
        // Start with everything squarefree, then clear multiples of p^2.
        let mut bits = vec![!0u64; words];
        bits[0] &= !1; // 0 is not squarefree
        let mut p = 2u64;
        while p * p <= limit {
            let sq = p * p;
            let mut k = sq;
            while k <= limit {
                bits[(k / 64) as usize] &= !(1u64 << (k % 64));
                k += sq;
            }
            p += 1;
        }
        SquarefreeSieve { bits, limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        assert!(n <= self.limit, "sieve queried beyond its limit");
        self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Iterator over squarefree n in 1..=limit.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.limit).filter(move |&n| self.is_squarefree(n))
    }
}
