use num_traits::Zero;

use crate::rational::{one, zero, Rational};

/// Least nonnegative solution of `u = T·u + c` for substochastic `T`
/// (`edges[s]` lists `(s', T[s][s'])`). States that cannot reach a positive
/// `c` along `T` get 0; on the rest `I − T` is nonsingular and the system is
/// solved by exact Gaussian elimination.
pub(crate) fn least_fixpoint(edges: &[Vec<(usize, Rational)>], c: &[Rational]) -> Vec<Rational> {
    let n = c.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, row) in edges.iter().enumerate() {
        for (t, _) in row {
            preds[*t].push(s);
        }
    }
    let mut live = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&s| !c[s].is_zero()).collect();
    for &s in &stack {
        live[s] = true;
    }
    while let Some(t) = stack.pop() {
        for &s in &preds[t] {
            if !live[s] {
                live[s] = true;
                stack.push(s);
            }
        }
    }
    let index: Vec<Option<usize>> = {
        let mut k = 0;
        live.iter()
            .map(|&l| {
                l.then(|| {
                    k += 1;
                    k - 1
                })
            })
            .collect()
    };
    let members: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
    let m = members.len();
    let mut a = vec![vec![zero(); m + 1]; m];
    for (i, &s) in members.iter().enumerate() {
        a[i][i] = one();
        for (t, p) in &edges[s] {
            if let Some(j) = index[*t] {
                a[i][j] -= p;
            }
        }
        a[i][m] = c[s].clone();
    }
    let solution = gauss(a);
    let mut out = vec![zero(); n];
    for (i, &s) in members.iter().enumerate() {
        out[s] = solution[i].clone();
    }
    out
}

/// Solves the augmented system `[A | b]`; `A` must be nonsingular.
fn gauss(mut a: Vec<Vec<Rational>>) -> Vec<Rational> {
    let m = a.len();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !a[r][col].is_zero())
            .expect("pruned system is nonsingular");
        a.swap(col, pivot);
        let inv = one() / &a[col][col];
        for v in a[col][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &factor * p;
            }
        }
    }
    a.into_iter().map(|row| row[m].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn geometric_loop() {
        // u0 = 1/3 u0 + 1/3 u1 ; u1 = 1
        let edges = vec![vec![(0, ratio(1, 3)), (1, ratio(1, 3))], vec![]];
        let u = least_fixpoint(&edges, &[zero(), one()]);
        assert_eq!(u, vec![ratio(1, 2), one()]);
    }

    #[test]
    fn singular_loop_is_pruned() {
        // u0 = u0 has least solution 0
        let edges = vec![vec![(0, one())]];
        assert_eq!(least_fixpoint(&edges, &[zero()]), vec![zero()]);
    }
}
