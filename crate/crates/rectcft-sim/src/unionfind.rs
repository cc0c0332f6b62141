/// Disjoint-set forest over site indices with path halving and union by rank.
#[derive(Debug, Clone)]
pub struct UnionFindForest {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFindForest {
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "too many sites");
        UnionFindForest { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Every site back to its own singleton.
    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.rank.fill(0);
    }

    #[inline]
    pub fn find(&mut self, x: usize) -> usize {
        let p = &mut self.parent[..];
        let mut x = x as u32;
        loop {
            let px = p[x as usize];
            if px == x {
                return x as usize;
            }
            let g = p[px as usize];
            p[x as usize] = g;
            x = g;
        }
    }

    /// Joins the sets of a and b; returns false if they were already joined.
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if self.rank[ra] < self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi as u32;
        if self.rank[lo] == self.rank[hi] {
            self.rank[hi] += 1;
        }
        true
    }

    pub fn connected(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Root of every site, fully compressing the forest.
    pub fn roots(&mut self, out: &mut Vec<u32>) {
        out.clear();
        for i in 0..self.parent.len() {
            let r = self.find(i) as u32;
            self.parent[i] = r;
            out.push(r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_is_idempotent() {
        let mut uf = UnionFindForest::new(10);
        for (a, b) in [(0, 1), (2, 3), (1, 3), (7, 8)] {
            uf.union(a, b);
        }
        let r = uf.find(0);
        assert_eq!(uf.find(0), r);
        assert!(uf.connected(0, 2) && !uf.connected(0, 7));
        assert!(!uf.union(1, 2));
        uf.reset();
        assert!(!uf.connected(0, 1));
    }
}
