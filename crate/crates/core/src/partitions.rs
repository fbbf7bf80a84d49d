//! Young diagram combinatorics: hooks and contents, conjugation, classical
//! Littlewood-Richardson coefficients, and the level-K truncated tensor
//! product of su(N) computed by the Kac-Walton reflection procedure.

use std::collections::BTreeMap;
use std::fmt;

/// A partition: weakly decreasing, strictly positive row lengths. The empty
/// diagram is `YoungDiagram(vec![])`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct YoungDiagram(Vec<usize>);

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl YoungDiagram {
    pub fn new(rows: impl Into<Vec<usize>>) -> Self {
        let rows = rows.into();
        assert!(
            rows.windows(2).all(|w| w[0] >= w[1]) && rows.iter().all(|&r| r > 0),
            "rows must be weakly decreasing and positive: {rows:?}"
        );
        YoungDiagram(rows)
    }

    pub fn empty() -> Self {
        YoungDiagram(vec![])
    }

    /// One row of length k (the empty diagram for k = 0).
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            YoungDiagram(vec![k])
        }
    }

    /// One column of height h.
    pub fn column(h: usize) -> Self {
        YoungDiagram(vec![1; h])
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Length of the j-th column (0-based).
    pub fn col_len(&self, j: usize) -> usize {
        self.0.iter().take_while(|&&r| r > j).count()
    }

    pub fn conjugate(&self) -> Self {
        if self.0.is_empty() {
            return Self::empty();
        }
        let cols = self.0[0];
        YoungDiagram((0..cols).map(|j| self.col_len(j)).collect())
    }

    pub fn contains(&self, other: &Self) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(i, &r)| self.row_len(i) >= r)
    }

    /// Sum of contents cn(c) = j - i over all cells (0-based coordinates).
    pub fn content_sum(&self) -> i64 {
        let mut s = 0i64;
        for (i, &r) in self.0.iter().enumerate() {
            for j in 0..r {
                s += j as i64 - i as i64;
            }
        }
        s
    }

    /// (hook length, content) per cell in row-major order:
    /// hl(c) = lambda_i + conj(lambda)_j - i - j - 1, cn(c) = j - i
    /// with 0-based (i, j); the hook formula is the usual 1-based one.
    pub fn hooks_and_contents(&self) -> Vec<(usize, i64)> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &r) in self.0.iter().enumerate() {
            for j in 0..r {
                let hook = r + conj.row_len(j) - i - j - 1;
                out.push((hook, j as i64 - i as i64));
            }
        }
        out
    }

    /// Removes `count` full-height columns assuming every row has length >= count.
    fn drop_columns(&self, count: usize) -> Self {
        YoungDiagram(
            self.0
                .iter()
                .map(|&r| r - count)
                .filter(|&r| r > 0)
                .collect(),
        )
    }
}

/// Counts Littlewood-Richardson skew tableaux of shape nu/lambda with content
/// mu: semistandard fillings whose reverse reading word is a ballot sequence.
/// Cells are filled in reading order (each row right to left, rows top to
/// bottom) so the ballot condition can be enforced per prefix.
pub fn lr_coefficient(lambda: &YoungDiagram, mu: &YoungDiagram, nu: &YoungDiagram) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) {
        return 0;
    }
    if mu.size() == 0 {
        return u64::from(nu == lambda);
    }
    // cells of nu/lambda in reading order
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..nu.num_rows() {
        let lo = lambda.row_len(i);
        let hi = nu.row_len(i);
        for j in (lo..hi).rev() {
            cells.push((i, j));
        }
    }
    let letters = mu.num_rows();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut counts = vec![0usize; letters];
    let mut total = 0u64;

    fn dfs(
        idx: usize,
        cells: &[(usize, usize)],
        mu: &YoungDiagram,
        fill: &mut BTreeMap<(usize, usize), usize>,
        counts: &mut Vec<usize>,
        total: &mut u64,
    ) {
        if idx == cells.len() {
            *total += 1;
            return;
        }
        let (i, j) = cells[idx];
        for t in 0..counts.len() {
            if counts[t] >= mu.row_len(t) {
                continue;
            }
            // ballot: after placing t, #t must still be > #(t+1) counts-wise
            if t > 0 && counts[t] + 1 > counts[t - 1] {
                continue;
            }
            // semistandard: weakly increasing along rows (cell to the right
            // was filled earlier), strictly increasing down columns
            if let Some(&right) = fill.get(&(i, j + 1)) {
                if t > right {
                    continue;
                }
            }
            if i > 0 {
                if let Some(&up) = fill.get(&(i - 1, j)) {
                    if t <= up {
                        continue;
                    }
                }
            }
            fill.insert((i, j), t);
            counts[t] += 1;
            dfs(idx + 1, cells, mu, fill, counts, total);
            counts[t] -= 1;
            fill.remove(&(i, j));
        }
    }

    dfs(0, &cells, mu, &mut fill, &mut counts, &mut total);
    total
}

/// Expands lambda * mu into diagrams with at most `max_rows` rows.
pub fn lr_expand(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    max_rows: usize,
) -> Vec<(YoungDiagram, u64)> {
    let target = lambda.size() + mu.size();
    let mut out = Vec::new();
    if mu.size() == 0 {
        return vec![(lambda.clone(), 1)];
    }
    // enumerate candidate partitions nu of `target` with lambda ⊆ nu and at
    // most max_rows rows, row by row
    let cap0 = lambda.row_len(0) + mu.row_len(0);
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        let used: usize = prefix.iter().sum();
        let depth = prefix.len();
        if used == target {
            if depth >= lambda.num_rows() {
                let nu = YoungDiagram(prefix);
                let c = lr_coefficient(lambda, mu, &nu);
                if c > 0 {
                    out.push((nu, c));
                }
            }
            continue;
        }
        if depth == max_rows {
            continue;
        }
        let hi = if depth == 0 { cap0 } else { prefix[depth - 1] }.min(target - used);
        let lo = lambda.row_len(depth).max(1);
        for next in lo..=hi {
            let mut p = prefix.clone();
            p.push(next);
            stack.push(p);
        }
    }
    out.sort();
    out
}

/// One term of the truncated tensor product: an alcove diagram (< N rows,
/// <= K columns), its multiplicity, and the number of full height-N columns
/// removed on the way (LR stripping plus alcove reflection).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTerm {
    pub diagram: YoungDiagram,
    pub multiplicity: u64,
    pub columns_removed: usize,
}

/// Kac-Walton evaluation of the su(N) level-K fusion product on diagrams in
/// the (N-1) x K alcove: classical LR expansion, removal of full height-N
/// columns, then affine Weyl reflection into the alcove with alternating
/// signs. Signed multiplicities cancel to nonnegative totals.
pub fn su_fusion(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    rank: usize,
    level: usize,
) -> Vec<FusionTerm> {
    assert!(rank >= 2);
    assert!(
        lambda.num_rows() < rank && lambda.row_len(0) <= level,
        "lambda outside the alcove"
    );
    assert!(
        mu.num_rows() < rank && mu.row_len(0) <= level,
        "mu outside the alcove"
    );
    let period = (rank + level) as i64;
    let mut acc: BTreeMap<YoungDiagram, (i64, usize)> = BTreeMap::new();
    for (nu, c) in lr_expand(lambda, mu, rank) {
        // strip full height-N columns
        let full = if nu.num_rows() == rank { nu.row_len(rank - 1) } else { 0 };
        let nu = nu.drop_columns(full);
        let mut ell: Vec<i64> = (0..rank)
            .map(|i| nu.row_len(i) as i64 + (rank - 1 - i) as i64)
            .collect();
        let Some(sign) = reflect_into_alcove(&mut ell, period) else {
            continue; // annihilated on an alcove wall
        };
        let mut rows: Vec<usize> = ell
            .iter()
            .enumerate()
            .map(|(i, &l)| (l - (rank - 1 - i) as i64) as usize)
            .collect();
        let extra = rows[rank - 1];
        for r in rows.iter_mut() {
            *r -= extra;
        }
        let diagram = YoungDiagram(rows.into_iter().filter(|&r| r > 0).collect());
        debug_assert!(diagram.row_len(0) <= level);
        let removed = full + extra;
        let entry = acc.entry(diagram).or_insert((0, removed));
        debug_assert_eq!(entry.1, removed, "box count must determine column count");
        entry.0 += sign * c as i64;
    }
    acc.into_iter()
        .filter(|(_, (m, _))| *m != 0)
        .map(|(diagram, (m, columns_removed))| {
            assert!(m > 0, "fusion multiplicity must cancel to >= 0");
            FusionTerm { diagram, multiplicity: m as u64, columns_removed }
        })
        .collect()
}

/// Reflects the shifted weight `ell` into the fundamental alcove of the
/// affine Weyl group (permutations plus sum-zero translations by `period`).
/// Returns the sign of the reduction, or None when the weight sits on a wall
/// (two entries congruent mod `period`).
fn reflect_into_alcove(ell: &mut [i64], period: i64) -> Option<i64> {
    {
        let mut seen = std::collections::BTreeSet::new();
        for &l in ell.iter() {
            if !seen.insert(l.rem_euclid(period)) {
                return None;
            }
        }
    }
    let mut sign = 1i64;
    for _ in 0..100_000 {
        // sort descending, tracking the permutation sign
        for i in 1..ell.len() {
            let mut j = i;
            while j > 0 && ell[j - 1] < ell[j] {
                ell.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let spread = ell[0] - ell[ell.len() - 1];
        debug_assert_ne!(spread, 0);
        if spread < period {
            return Some(sign);
        }
        // sum-preserving translation moving the extremes together
        ell[0] -= period;
        let last = ell.len() - 1;
        ell[last] += period;
    }
    unreachable!("alcove reflection did not terminate");
}
