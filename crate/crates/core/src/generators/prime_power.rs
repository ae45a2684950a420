/// GF(p^k) for small orders. Elements are integers 0..q whose base-p digits
/// are the coefficients of a polynomial modulo a fixed monic irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(p: u32, k: u32, mut x: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let r = x % p;
            x /= p;
            r
        })
        .collect()
}

fn undigits(p: u32, ds: &[u32]) -> u32 {
    ds.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic polynomial `m` (coefficients low first).
fn poly_rem(p: u32, mut a: Vec<u32>, m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[off + i] = (a[off + i] + (p - lead) * c) % p;
            }
        }
    }
    a
}

fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let k = m.len() - 1;
    for deg in 1..=k / 2 {
        for tail in 0..p.pow(deg as u32) {
            let mut f = digits(p, deg as u32, tail);
            f.push(1);
            if poly_rem(p, m.to_vec(), &f).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl SmallField {
    /// GF(q) for q = p^k with p prime, or None.
    pub fn new(q: u64) -> Option<Self> {
        let p = (2..=q).find(|f| q % f == 0)? as u32;
        let (mut k, mut r) = (0u32, q);
        while r % p as u64 == 0 {
            r /= p as u64;
            k += 1;
        }
        if r != 1 || q > u32::MAX as u64 {
            return None;
        }
        let q = q as u32;
        let modulus = (0..p.pow(k))
            .map(|tail| {
                let mut m = digits(p, k, tail);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(p, m))?;
        let mut field = SmallField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let generator = (1..q).find(|&g| field.order_slow(g) == q - 1)?;
        let mut x = 1;
        field.log = vec![0; q as usize];
        for e in 0..q - 1 {
            field.exp.push(x);
            field.log[x as usize] = e;
            x = field.mul_slow(x, generator);
        }
        Some(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (digits(self.p, self.k, a), digits(self.p, self.k, b));
        let mut prod = vec![0; 2 * self.k as usize];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        undigits(self.p, &poly_rem(self.p, prod, &self.modulus))
    }

    fn order_slow(&self, g: u32) -> u32 {
        let (mut x, mut e) = (g, 1);
        while x != 1 {
            x = self.mul_slow(x, g);
            e += 1;
        }
        e
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (digits(self.p, self.k, a), digits(self.p, self.k, b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(self.p, &s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = digits(self.p, self.k, a).iter().map(|x| (self.p - x) % self.p).collect();
        undigits(self.p, &s)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[e as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_for_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = SmallField::new(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
        assert!(SmallField::new(6).is_none());
        assert!(SmallField::new(1).is_none());
    }
}
