//! Integer row echelon form for subgroups of Z^k, with the unimodular
//! transform kept so solutions can be expressed in the original generators.

#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    ngens: usize,
    /// Echelon rows with strictly increasing pivot columns.
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    /// `transform[i]` expresses `rows[i]` in the original generators.
    transform: Vec<Vec<i128>>,
}

impl Lattice {
    pub fn new(gens: &[Vec<i64>], dim: usize) -> Self {
        let m = gens.len();
        let mut mat: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        let mut tr: Vec<Vec<i128>> = (0..m)
            .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
            .collect();
        let mut p = 0;
        let mut pivots = Vec::new();
        for col in 0..dim {
            if p >= m {
                break;
            }
            loop {
                // smallest nonzero |entry| in this column among rows p..
                let best = (p..m)
                    .filter(|&r| mat[r][col] != 0)
                    .min_by_key(|&r| mat[r][col].abs());
                let Some(b) = best else { break };
                mat.swap(p, b);
                tr.swap(p, b);
                let mut done = true;
                for r in p + 1..m {
                    if mat[r][col] != 0 {
                        let q = mat[r][col].div_euclid(mat[p][col]);
                        for c in 0..dim {
                            mat[r][c] -= q * mat[p][c];
                        }
                        for c in 0..m {
                            tr[r][c] -= q * tr[p][c];
                        }
                        if mat[r][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if mat[p][col] != 0 {
                if mat[p][col] < 0 {
                    mat[p].iter_mut().for_each(|x| *x = -*x);
                    tr[p].iter_mut().for_each(|x| *x = -*x);
                }
                pivots.push(col);
                p += 1;
            }
        }
        mat.truncate(p);
        tr.truncate(p);
        Lattice { dim, ngens: m, rows: mat, pivots, transform: tr }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Integer coefficients `z` with `sum z_i * gens[i] == v`, if any.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<i128>> {
        debug_assert_eq!(v.len(), self.dim);
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut z = vec![0i128; self.ngens];
        for (i, &c) in self.pivots.iter().enumerate() {
            if rest[..c].iter().any(|&x| x != 0) {
                return None;
            }
            let piv = self.rows[i][c];
            if rest[c] % piv != 0 {
                return None;
            }
            let q = rest[c] / piv;
            if q != 0 {
                for col in c..self.dim {
                    rest[col] -= q * self.rows[i][col];
                }
                for (zj, tj) in z.iter_mut().zip(&self.transform[i]) {
                    *zj += q * tj;
                }
            }
        }
        if rest.iter().any(|&x| x != 0) {
            return None;
        }
        Some(z)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.solve(v).is_some()
    }
}
