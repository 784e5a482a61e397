use crate::partition::Partition;

/// Littlewood-Richardson coefficient `c^λ_{μν}`: the number of semistandard
/// skew tableaux of shape `λ/μ` and content `ν` whose reverse reading word
/// is a lattice word.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lambda: &Partition) -> u64 {
    if mu.sum() + nu.sum() != lambda.sum() || !mu.contained_in(lambda) {
        return 0;
    }
    let rows = lambda.nonzero_len();
    let content: Vec<u32> = nu.parts()[..nu.nonzero_len()].to_vec();
    // Cells in reading order: rows top to bottom, each row right to left.
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let mut grid: Vec<Vec<u32>> = (0..rows).map(|r| vec![0; lambda.part(r) as usize]).collect();
    let mut used = vec![0u32; content.len() + 1];
    fill(0, &cells, mu, &content, &mut grid, &mut used)
}

fn fill(idx: usize, cells: &[(usize, usize)], mu: &Partition, content: &[u32], grid: &mut [Vec<u32>], used: &mut [u32]) -> u64 {
    let Some(&(r, c)) = cells.get(idx) else { return 1 };
    // Weakly increasing along rows: bounded by the already-filled right neighbour.
    let hi = grid[r].get(c + 1).copied().filter(|&v| v > 0).unwrap_or(content.len() as u32);
    // Strictly increasing down columns, when the cell above lies in the skew shape.
    let lo = if r > 0 && c >= mu.part(r - 1) as usize { grid[r - 1][c] + 1 } else { 1 };
    let mut total = 0;
    for v in lo..=hi {
        let vi = v as usize;
        if used[vi] >= content[vi - 1] {
            continue;
        }
        if vi > 1 && used[vi] + 1 > used[vi - 1] {
            continue;
        }
        used[vi] += 1;
        grid[r][c] = v;
        total += fill(idx + 1, cells, mu, content, grid, used);
        grid[r][c] = 0;
        used[vi] -= 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pieri_and_known_values() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1, 1, 1])), 0);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[3])), 0);
        assert_eq!(lr_coefficient(&p(&[0, 0]), &p(&[2, 1, 0]), &p(&[2, 1, 0])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[1, 1]), &p(&[2, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[2]), &p(&[2, 2])), 0);
    }

    /// `s_μ s_ν` expands with total dimension-free check: Σ_λ c^λ_{μν} f^λ = C(|λ|, |μ|) f^μ f^ν,
    /// with `f` the number of standard tableaux (hook length formula).
    #[test]
    fn standard_tableau_count_identity() {
        fn hooks(p: &Partition) -> u64 {
            let n = p.sum() as u64;
            let mut num: u64 = (1..=n).product();
            let parts = &p.parts()[..p.nonzero_len()];
            for (r, &len) in parts.iter().enumerate() {
                for c in 0..len as usize {
                    let arm = len as usize - c - 1;
                    let leg = parts[r + 1..].iter().filter(|&&x| x as usize > c).count();
                    num /= (arm + leg + 1) as u64;
                }
            }
            num
        }
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        for (mu, nu) in [(p(&[2, 1]), p(&[2, 1])), (p(&[3, 1]), p(&[2])), (p(&[2, 2]), p(&[1, 1, 1]))] {
            let total = mu.sum() + nu.sum();
            let lhs: u64 = Partition::all_with_sum(total, total as usize, total).iter().map(|lam| lr_coefficient(&mu, &nu, lam) * hooks(lam)).sum();
            assert_eq!(lhs, binom(total as u64, mu.sum() as u64) * hooks(&mu) * hooks(&nu));
        }
    }
}
