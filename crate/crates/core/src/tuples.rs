/// Strictly increasing integer tuples `0 <= x_1 < ... < x_n <= max`,
/// produced in lexicographic order.
#[derive(Clone, Debug)]
pub struct IncreasingTuples {
    max: usize,
    current: Option<Vec<usize>>,
}

impl IncreasingTuples {
    /// All `n`-subsets of `{0, ..., max}`. Empty when `n > max + 1`.
    pub fn new(n: usize, max: usize) -> Self {
        let current = if n == 0 || n > max + 1 { None } else { Some((0..n).collect()) };
        IncreasingTuples { max, current }
    }
}

impl Iterator for IncreasingTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let n = out.len();
        let mut next = out.clone();
        // rightmost slot that can still move up
        let mut i = n;
        while i > 0 {
            i -= 1;
            if next[i] < self.max - (n - 1 - i) {
                next[i] += 1;
                for k in i + 1..n {
                    next[k] = next[k - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
