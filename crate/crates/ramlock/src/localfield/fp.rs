//! Small polynomial arithmetic over F_p, used to pick unramified defining polynomials.

fn trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn inv(a: u64, p: u64) -> u64 {
    super::arith::inv_mod(a as i64, p as i64).unwrap_or(0) as u64
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv(m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p * p - c * m[i] % p) % p;
        }
        trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn frob_iter(m: &[u64], p: u64, times: u32) -> Vec<u64> {
    // x^(p^times) mod m by repeated p-th powering
    let mut cur = rem(&[0, 1], m, p);
    for _ in 0..times {
        let mut acc = vec![1u64];
        for _ in 0..p {
            acc = mul_mod(&acc, &cur, m, p);
        }
        cur = acc;
    }
    cur
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let full = frob_iter(m, p, d as u32);
    let mut diff = full;
    diff.resize(diff.len().max(2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(&mut diff);
    if !(diff.len() == 1 && diff[0] == 0) {
        return false;
    }
    for q in super::arith::prime_factors(d as u64) {
        let h = frob_iter(m, p, (d as u64 / q) as u32);
        let mut g = h;
        g.resize(g.len().max(2), 0);
        g[1] = (g[1] + p - 1) % p;
        trim(&mut g);
        let c = gcd(m, &g, p);
        if c.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically first monic irreducible polynomial of degree m over F_p,
/// coefficients from the constant term up.
pub fn conway_like(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let total = p.pow(m as u32);
    for t in 0..total {
        let mut c = Vec::with_capacity(m + 1);
        let mut x = t;
        for _ in 0..m {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2+1 over F_3
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
        assert!(!is_irreducible(&[0, 0, 1], 7));
        assert!(is_irreducible(&[1, 1, 0, 1], 2)); // x^3+x+1
        assert_eq!(conway_like(2, 2), vec![1, 1, 1]);
    }
}
