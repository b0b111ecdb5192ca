//! Finite-index sublattices of `Z^n` in Hermite normal form.
//!
//! Convention: a lattice is the column span of an `n x n` integer matrix `H`
//! that is upper triangular with positive diagonal, and every entry to the
//! right of the diagonal satisfies `0 <= H[i][j] < H[i][i]`. Each
//! full-rank sublattice has exactly one such basis, and its index is the
//! product of the diagonal.

use std::fmt;

use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hnf {
    n: usize,
    /// row-major
    entries: Vec<i64>,
}

impl Hnf {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Hnf { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Index of the lattice in `Z^n`.
    pub fn index(&self) -> i128 {
        (0..self.n).map(|i| self.get(i, i) as i128).product()
    }

    /// Hermite normal form of the lattice spanned by the columns of the
    /// row-major `n x n` matrix `m`, which must have full rank.
    pub fn from_columns(n: usize, m: &[i128]) -> Self {
        let mut a = m.to_vec();
        let at = |i: usize, j: usize| i * n + j;
        for i in (0..n).rev() {
            for j in 0..i {
                if a[at(i, j)] == 0 {
                    continue;
                }
                let (aii, aij) = (a[at(i, i)], a[at(i, j)]);
                let e = aii.extended_gcd(&aij);
                let (s, t) = (aii / e.gcd, aij / e.gcd);
                // [col_i, col_j] <- [x col_i + y col_j, -t col_i + s col_j], determinant 1
                for r in 0..=i {
                    let (ci, cj) = (a[at(r, i)], a[at(r, j)]);
                    a[at(r, i)] = e.x * ci + e.y * cj;
                    a[at(r, j)] = -t * ci + s * cj;
                }
            }
            assert!(a[at(i, i)] != 0, "matrix does not have full rank");
            if a[at(i, i)] < 0 {
                for r in 0..=i {
                    a[at(r, i)] = -a[at(r, i)];
                }
            }
            let d = a[at(i, i)];
            for j in i + 1..n {
                let q = a[at(i, j)].div_euclid(d);
                if q != 0 {
                    for r in 0..=i {
                        a[at(r, j)] -= q * a[at(r, i)];
                    }
                }
            }
        }
        let entries = a.into_iter().map(|x| i64::try_from(x).expect("HNF entries are bounded by the index")).collect();
        Hnf { n, entries }
    }

    /// Whether the lattice of `inner` is a subgroup of the lattice of `self`:
    /// every column of `inner` must be an integer combination of the columns
    /// of `self`, found by back substitution.
    pub fn contains(&self, inner: &Hnf) -> bool {
        assert_eq!(self.n, inner.n);
        let n = self.n;
        let mut x = vec![0i128; n];
        (0..n).all(|col| {
            for i in (0..n).rev() {
                let mut r = inner.get(i, col) as i128;
                for (j, xj) in x.iter().enumerate().skip(i + 1) {
                    r -= self.get(i, j) as i128 * xj;
                }
                let d = self.get(i, i) as i128;
                if r % d != 0 {
                    return false;
                }
                x[i] = r / d;
            }
            true
        })
    }

    /// All sublattices of index `p` (prime) in this lattice.
    ///
    /// They are the kernels of the nonzero functionals `L -> Z/p` up to
    /// scaling. For a functional `c` (coordinates in the basis `H`)
    /// normalised so its first nonzero entry `c_j` is 1, the kernel is
    /// spanned by `p e_j` and `e_i - c_i e_j` for `i != j`.
    pub fn index_p_sublattices(&self, p: i64) -> Vec<Hnf> {
        let n = self.n;
        let mut out = Vec::with_capacity(((p as usize).pow(n as u32) - 1) / (p as usize - 1));
        let mut c = vec![0i64; n];
        let mut basis = vec![0i128; n * n];
        let mut prod = vec![0i128; n * n];
        for j in 0..n {
            // c = (0, ..., 0, 1, c_{j+1}, ..., c_{n-1}) over all tails
            let tail = n - j - 1;
            for code in 0..(p as u64).pow(tail as u32) {
                c.iter_mut().for_each(|v| *v = 0);
                c[j] = 1;
                let mut rest = code;
                for k in (j + 1..n).rev() {
                    c[k] = (rest % p as u64) as i64;
                    rest /= p as u64;
                }
                basis.iter_mut().for_each(|v| *v = 0);
                for i in 0..n {
                    if i == j {
                        basis[j * n + j] = p as i128;
                    } else {
                        basis[i * n + i] = 1;
                        basis[j * n + i] = -(c[i] as i128);
                    }
                }
                for r in 0..n {
                    for col in 0..n {
                        prod[r * n + col] = (0..n).map(|k| self.get(r, k) as i128 * basis[k * n + col]).sum();
                    }
                }
                out.push(Hnf::from_columns(n, &prod));
            }
        }
        out
    }
}

impl fmt::Display for Hnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(",")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        f.write_str("]")
    }
}

/// Every HNF of determinant `p^k` in dimension `n`, in a fixed order:
/// diagonal exponent vectors lexicographically, then the entries right of the
/// diagonal in row-major order.
pub fn enumerate_index(n: usize, p: i64, k: u32) -> Vec<Hnf> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn exps_rec(pos: usize, left: u32, exps: &mut Vec<u32>, n: usize, p: i64, out: &mut Vec<Hnf>) {
        if pos + 1 == n {
            exps[pos] = left;
            fill_entries(exps, p, out);
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            exps_rec(pos + 1, left - e, exps, n, p, out);
        }
    }
    if n == 0 {
        if k == 0 {
            out.push(Hnf::identity(0));
        }
        return out;
    }
    exps_rec(0, k, &mut exps, n, p, &mut out);
    out
}

fn fill_entries(exps: &[u32], p: i64, out: &mut Vec<Hnf>) {
    let n = exps.len();
    let diag: Vec<i64> = exps.iter().map(|&e| p.pow(e)).collect();
    let free: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut h = Hnf { n, entries: vec![0; n * n] };
    for (i, &d) in diag.iter().enumerate() {
        h.entries[i * n + i] = d;
    }
    fn rec(k: usize, free: &[(usize, usize)], diag: &[i64], h: &mut Hnf, out: &mut Vec<Hnf>) {
        if k == free.len() {
            out.push(h.clone());
            return;
        }
        let (i, j) = free[k];
        for v in 0..diag[i] {
            h.entries[i * h.n + j] = v;
            rec(k + 1, free, diag, h, out);
        }
    }
    rec(0, &free, &diag, &mut h, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(n: usize, m: &[i128]) -> Hnf {
        Hnf::from_columns(n, m)
    }

    #[test]
    fn normal_form_is_reduced_and_unique() {
        // span{(2,0),(1,1)} = span{(1,1),(0,2)}
        let a = cols(2, &[2, 1, 0, 1]);
        let b = cols(2, &[1, 0, 1, 2]);
        assert_eq!(a, b);
        for i in 0..2 {
            assert!(a.get(i, i) > 0);
            for j in i + 1..2 {
                assert!((0..a.get(i, i)).contains(&a.get(i, j)));
            }
        }
        assert_eq!(a.get(1, 0), 0);
        assert_eq!(a.index(), 2);
        assert_eq!(cols(2, &[-3, 0, 0, 1]), cols(2, &[3, 0, 0, 1]));
    }

    #[test]
    fn enumeration_counts_match_subgroup_numbers() {
        // number of index-p^k subgroups of Z^2 is 1 + p + ... + p^k
        for (p, k, expected) in [(2, 0, 1), (2, 1, 3), (2, 2, 7), (2, 3, 15), (3, 2, 13)] {
            assert_eq!(enumerate_index(2, p, k).len(), expected);
        }
        // Z^3, p = 2: 1, 7, 35
        assert_eq!(enumerate_index(3, 2, 1).len(), 7);
        assert_eq!(enumerate_index(3, 2, 2).len(), 35);
    }

    #[test]
    fn index_p_sublattices_are_all_distinct_and_contained() {
        for h in enumerate_index(3, 2, 2) {
            let mut subs = h.index_p_sublattices(2);
            assert_eq!(subs.len(), 7);
            for s in &subs {
                assert_eq!(s.index(), h.index() * 2);
                assert!(h.contains(s));
                assert!(!s.contains(&h));
            }
            subs.sort();
            subs.dedup();
            assert_eq!(subs.len(), 7);
        }
    }

    #[test]
    fn containment_matches_enumeration() {
        // each index-4 subgroup of Z^2 lies in exactly the index-2 subgroups
        // it is found under by index_p_sublattices
        let twos = enumerate_index(2, 2, 1);
        for four in enumerate_index(2, 2, 2) {
            for two in &twos {
                let via_subs = two.index_p_sublattices(2).contains(&four);
                assert_eq!(two.contains(&four), via_subs, "{two} vs {four}");
            }
        }
    }
}
