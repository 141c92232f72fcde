//! Brute-force reference computations that share no code with the library:
//! complexes as vertex bitmasks, paths by depth-first search, ranks by
//! fraction-free integer elimination.

#![allow(dead_code)]

/// A complex as the list of all its simplices (nonempty vertex bitmasks).
pub struct Oracle {
    pub labels: Vec<char>,
    pub simplices: Vec<u32>,
}

impl Oracle {
    pub fn from_maximal(labels: &str, maximal: &[&str]) -> Self {
        let labels: Vec<char> = labels.chars().collect();
        let mut simplices = Vec::new();
        for m in maximal {
            let mask: u32 = m.chars().map(|c| 1 << labels.iter().position(|&l| l == c).unwrap()).sum();
            let mut sub = mask;
            while sub != 0 {
                if !simplices.contains(&sub) {
                    simplices.push(sub);
                }
                sub = (sub - 1) & mask;
            }
        }
        Oracle { labels, simplices }
    }

    pub fn full(n: usize) -> Self {
        let labels: String = (0..=n).map(|i| (b'a' + i as u8) as char).collect();
        Self::from_maximal(&labels.clone(), &[labels.as_str()])
    }

    pub fn boundary(n: usize) -> Self {
        let labels: String = (0..=n).map(|i| (b'a' + i as u8) as char).collect();
        let faces: Vec<String> = (0..=n)
            .map(|skip| labels.chars().enumerate().filter(|&(i, _)| i != skip).map(|(_, c)| c).collect())
            .collect();
        let refs: Vec<&str> = faces.iter().map(String::as_str).collect();
        Self::from_maximal(&labels, &refs)
    }

    pub fn dim(&self, s: u32) -> usize {
        s.count_ones() as usize - 1
    }

    pub fn name(&self, s: u32) -> String {
        (0..self.labels.len()).filter(|i| s >> i & 1 == 1).map(|i| self.labels[i]).collect()
    }

    /// Number of strictly increasing chains of simplices.
    pub fn flag_count(&self) -> usize {
        fn extend(o: &Oracle, top: u32) -> usize {
            1 + o.simplices.iter().filter(|&&t| t != top && t & top == top).map(|&t| extend(o, t)).sum::<usize>()
        }
        self.simplices.iter().map(|&s| extend(self, s)).sum()
    }

    pub fn arrows(&self, delta: &[i64]) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &s in &self.simplices {
            for &t in &self.simplices {
                let incident = s != t && (s & t == s || s & t == t);
                if incident && delta[self.dim(s)] == delta[self.dim(t)] + 1 {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn paths(&self, delta: &[i64], len: usize) -> Vec<Vec<u32>> {
        let arrows = self.arrows(delta);
        let mut current: Vec<Vec<u32>> = self.simplices.iter().map(|&s| vec![s]).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &current {
                for &(s, t) in &arrows {
                    if s == *p.last().unwrap() {
                        let mut q = p.clone();
                        q.push(t);
                        next.push(q);
                    }
                }
            }
            current = next;
        }
        current
    }

    /// Graded dimensions of the path algebra modulo blockwise "sum of all
    /// length-two paths" (`equivalence = false`) or "all length-two paths
    /// agree" (`equivalence = true`).
    pub fn graded_dims(&self, delta: &[i64], equivalence: bool) -> Vec<usize> {
        let arrows = self.arrows(delta);
        let middles = |x: u32, y: u32| -> Vec<u32> {
            arrows.iter().filter(|&&(s, m)| s == x && arrows.contains(&(m, y))).map(|&(_, m)| m).collect()
        };
        let mut dims = Vec::new();
        for d in 0.. {
            let paths = self.paths(delta, d);
            if paths.is_empty() {
                break;
            }
            let col = |p: &Vec<u32>| paths.iter().position(|q| q == p).unwrap();
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for p in &paths {
                for i in 0..d.saturating_sub(1) {
                    let ms = middles(p[i], p[i + 2]);
                    let with = |m: u32| {
                        let mut q = p.clone();
                        q[i + 1] = m;
                        q
                    };
                    if equivalence {
                        for pair in ms.windows(2) {
                            let mut row = vec![0; paths.len()];
                            row[col(&with(pair[0]))] += 1;
                            row[col(&with(pair[1]))] -= 1;
                            rows.push(row);
                        }
                    } else {
                        let mut row = vec![0; paths.len()];
                        for &m in &ms {
                            row[col(&with(m))] += 1;
                        }
                        rows.push(row);
                    }
                }
            }
            dims.push(paths.len() - integer_rank(rows));
        }
        dims
    }
}

/// Rank by fraction-free elimination with gcd normalisation.
pub fn integer_rank(mut rows: Vec<Vec<i64>>) -> usize {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = *x * a - y * b;
                }
                let g = rows[r].iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}
