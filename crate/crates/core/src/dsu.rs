//! Disjoint-set forest with path halving and union by size.

#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Groups exponent vectors whose supports overlap (transitively).
///
/// Returns, for each vector, the index of its component; components are
/// numbered in order of first appearance.
pub(crate) fn support_components(vectors: &[&[u32]]) -> (Vec<usize>, usize) {
    let n = vectors.len();
    let mut dsu = Dsu::new(n);
    if let Some(dim) = vectors.first().map(|v| v.len()) {
        let mut first_with: Vec<Option<usize>> = vec![None; dim];
        for (idx, v) in vectors.iter().enumerate() {
            for (j, &c) in v.iter().enumerate() {
                if c > 0 {
                    match first_with[j] {
                        Some(f) => {
                            dsu.union(f, idx);
                        }
                        None => first_with[j] = Some(idx),
                    }
                }
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut root_label = vec![usize::MAX; n];
    let mut count = 0;
    for (idx, slot) in label.iter_mut().enumerate() {
        let r = dsu.find(idx);
        if root_label[r] == usize::MAX {
            root_label[r] = count;
            count += 1;
        }
        *slot = root_label[r];
    }
    (label, count)
}
