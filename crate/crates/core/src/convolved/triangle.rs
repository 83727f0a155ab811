use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Integer;

/// Coefficients `a_i(N)` in
/// `(d/dt)^N F(t,x) = sum_i a_i(N) <x>_{N-i} (1+2t)^{N-2i} F(t, x+N-i)`
/// for `F(t,x) = (1 - t - t^2)^(-x)`.
///
/// Row `N` stores `i = 0 ..= floor((N+1)/2)`; for odd `N` the last entry is
/// the structural zero `a_{(N+1)/2}(N) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTriangle {
    rows: Vec<Vec<Integer>>,
}

/// Number of stored entries in row `n`.
pub fn row_width(n: usize) -> usize {
    n.div_ceil(2) + 1
}

impl CoeffTriangle {
    /// Rows `0 ..= n_max` from `a_0(0) = 1` and
    /// `a_i(N+1) = 2(N-2i+2) a_{i-1}(N) + a_i(N)`, with entries outside row
    /// `N` read as zero.
    pub fn by_recurrence(n_max: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Integer::one()]);
        for n in 0..n_max {
            let prev = &rows[n];
            let at = |i: usize| prev.get(i).cloned().unwrap_or_else(Integer::zero);
            let mut next = Vec::with_capacity(row_width(n + 1));
            next.push(at(0));
            for i in 1..row_width(n + 1) {
                // N - 2i + 2 >= 0 across the whole row.
                let weight = 2 * (n + 2 - 2 * i) as u64;
                next.push(at(i - 1) * weight + at(i));
            }
            rows.push(next);
        }
        CoeffTriangle { rows }
    }

    /// Rows `0 ..= n_max` with every entry from [`triangle_closed`].
    pub fn by_closed_form(n_max: usize) -> Self {
        let rows = (0..=n_max)
            .map(|n| {
                (0..row_width(n))
                    .map(|i| triangle_closed(n, i).expect("index within row"))
                    .collect()
            })
            .collect();
        CoeffTriangle { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[Integer]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, i: usize) -> Option<&Integer> {
        self.rows.get(n).and_then(|row| row.get(i))
    }

    /// `(N, i, a_i(N))` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Integer)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(i, a)| (n, i, a)))
    }

    /// Copy with `a_i(N)` shifted by `delta`. Used to check that the
    /// identity verifiers notice a corrupted coefficient.
    pub fn perturbed(&self, n: usize, i: usize, delta: i64) -> Result<Self> {
        let mut out = self.clone();
        let entry = out
            .rows
            .get_mut(n)
            .and_then(|row| row.get_mut(i))
            .ok_or(Error::IndexOutOfTriangle { n, i })?;
        *entry += delta;
        Ok(out)
    }
}

pub fn triangle_recurrence(n_max: usize) -> CoeffTriangle {
    CoeffTriangle::by_recurrence(n_max)
}

/// `a_i(N)` from the nested sum
/// `2^i sum_{k_i=1}^{N-2i+1} sum_{k_{i-1}=1}^{k_i+1} ... sum_{k_1=1}^{k_2+1} k_i ... k_1`.
///
/// The sum is folded from the innermost index outwards:
/// `S_1(m) = sum_{k=1}^{m+1} k` and `S_j(m) = sum_{k=1}^{m+1} k S_{j-1}(k)`,
/// so that `a_i(N) = 2^i sum_{k=1}^{N-2i+1} k S_{i-1}(k)`. Empty ranges give 0.
pub fn triangle_closed(n: usize, i: usize) -> Result<Integer> {
    if i > n.div_ceil(2) {
        return Err(Error::IndexOutOfTriangle { n, i });
    }
    if i == 0 {
        return Ok(Integer::one());
    }
    let outer = n + 1 - 2 * i;
    if outer == 0 {
        return Ok(Integer::zero());
    }
    // inner[m] = S_depth(m). S_depth is needed for m <= outer + (i - 1 - depth),
    // the largest value the next index out can take.
    let mut inner: Vec<Integer> = vec![Integer::one(); outer + i];
    for depth in 1..i {
        let len = outer + i - depth;
        let mut running = Integer::zero();
        let mut next = Vec::with_capacity(len);
        for (k, s) in inner.iter().enumerate().take(len + 1).skip(1) {
            running += s * k;
            next.push(running.clone());
        }
        inner = next;
    }
    let total: Integer = (1..=outer).map(|k| &inner[k] * k).sum();
    Ok(total << i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    /// Literal recursion over `k_i, k_{i-1}, ..., k_1` with the stated limits.
    fn nested_literal(n: usize, i: usize) -> Integer {
        fn level(depth: usize, upper: usize) -> Integer {
            if depth == 0 {
                return Integer::one();
            }
            (1..=upper).map(|k| level(depth - 1, k + 1) * k).sum()
        }
        if i == 0 {
            return Integer::one();
        }
        let upper = (n + 1).saturating_sub(2 * i);
        level(i, upper) << i
    }

    #[test]
    fn printed_coefficients() {
        let t = triangle_recurrence(6);
        let check =
            |n: usize, i: usize, v: i64| assert_eq!(t.get(n, i), Some(&int(v)), "a_{i}({n})");
        check(2, 0, 1);
        check(2, 1, 2);
        check(3, 1, 6);
        check(4, 1, 12);
        check(4, 2, 12);
        check(5, 1, 20);
        check(5, 2, 60);
        check(6, 1, 30);
        check(6, 2, 180);
        check(6, 3, 120);
        check(1, 1, 0);
        check(3, 2, 0);
        check(5, 3, 0);
    }

    #[test]
    fn row_shapes_and_zero_diagonal() {
        let t = triangle_recurrence(61);
        for n in 0..=61 {
            let row = t.row(n).unwrap();
            assert_eq!(row.len(), row_width(n));
            assert_eq!(row[0], int(1));
            if n % 2 == 1 {
                assert_eq!(row[n.div_ceil(2)], int(0), "a_(N+1)/2({n})");
            }
            assert!(row.iter().all(|a| a >= &int(0)));
        }
    }

    #[test]
    fn recurrence_holds_between_rows() {
        let t = triangle_recurrence(40);
        for n in 0..40usize {
            for i in 1..=n.div_ceil(2) {
                let prev_lo = t.get(n, i - 1).unwrap();
                let prev = t.get(n, i).cloned().unwrap_or_default();
                let expected = prev_lo * (2 * (n + 2 - 2 * i) as u64) + prev;
                assert_eq!(t.get(n + 1, i).unwrap(), &expected);
            }
        }
    }

    #[test]
    fn closed_form_first_column() {
        for n in [3usize, 4, 5, 6] {
            assert_eq!(triangle_closed(n, 1).unwrap(), int((n * (n - 1)) as i64));
        }
        for n in 0..10 {
            assert_eq!(triangle_closed(n, 0).unwrap(), int(1));
        }
    }

    #[test]
    fn closed_form_a3_of_6() {
        // 2^3 * sum_{k3=1}^{1} k3 sum_{k2=1}^{2} k2 sum_{k1=1}^{k2+1} k1 = 8 * (1*3 + 2*6) = 120
        assert_eq!(triangle_closed(6, 3).unwrap(), int(120));
    }

    #[test]
    fn closed_form_matches_literal_nested_sum() {
        for n in 0..=16 {
            for i in 0..row_width(n) {
                assert_eq!(
                    triangle_closed(n, i).unwrap(),
                    nested_literal(n, i),
                    "a_{i}({n})"
                );
            }
        }
    }

    #[test]
    fn closed_form_rejects_outside_index() {
        assert_eq!(
            triangle_closed(4, 3),
            Err(Error::IndexOutOfTriangle { n: 4, i: 3 })
        );
        assert_eq!(triangle_closed(5, 3).unwrap(), int(0));
    }

    #[test]
    fn closed_form_matches_recurrence_to_60() {
        assert_eq!(CoeffTriangle::by_closed_form(60), triangle_recurrence(60));
    }

    #[test]
    fn perturbation() {
        let t = triangle_recurrence(6);
        let bumped = t.perturbed(3, 1, 1).unwrap();
        assert_eq!(bumped.get(3, 1), Some(&int(7)));
        assert!(t.perturbed(3, 5, 1).is_err());
    }
}
