use std::collections::HashMap;
use std::f64::consts::PI;

use pillowcase_core::{PillowcasePoint, TWO_PI};

/// Bucket grid over the canonical domain answering orbifold-metric radius
/// queries.
#[derive(Debug, Clone)]
pub struct PointIndex {
    cell: f64,
    cols: i64,
    rows: i64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    points: Vec<PillowcasePoint>,
}

impl PointIndex {
    pub fn new(cell: f64) -> Self {
        let cell = cell.max(1e-6);
        PointIndex {
            cell,
            cols: (PI / cell).ceil() as i64 + 1,
            rows: (TWO_PI / cell).ceil() as i64,
            buckets: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(&self, a: f64, b: f64) -> (i64, i64) {
        ((a / self.cell).floor() as i64, ((b / self.cell).floor() as i64).rem_euclid(self.rows))
    }

    /// Inserts `p` and returns its index.
    pub fn insert(&mut self, p: PillowcasePoint) -> usize {
        let id = self.points.len();
        let k = self.key(p.alpha(), p.beta());
        self.buckets.entry(k).or_default().push(id);
        self.points.push(p);
        id
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices of points within `r` of `p`, in insertion order.
    pub fn within(&self, p: &PillowcasePoint, r: f64) -> Vec<usize> {
        let (a, b) = p.coords();
        let mut centers = vec![(a, b)];
        if a < r || a > PI - r {
            centers.push((a, (TWO_PI - b).rem_euclid(TWO_PI)));
        }
        let span = (r / self.cell).ceil() as i64;
        let mut out = Vec::new();
        for (ca, cb) in centers {
            let (ka, kb) = self.key(ca, cb);
            for da in -span..=span {
                let ia = ka + da;
                if ia < -1 || ia > self.cols {
                    continue;
                }
                for db in -span..=span {
                    let ib = (kb + db).rem_euclid(self.rows);
                    if let Some(ids) = self.buckets.get(&(ia, ib)) {
                        out.extend(ids.iter().copied().filter(|&i| self.points[i].distance(p) < r));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Nearest point within `r`, ties broken by index.
    pub fn nearest(&self, p: &PillowcasePoint, r: f64) -> Option<usize> {
        self.within(p, r).into_iter().min_by(|&i, &j| {
            self.points[i].distance(p).total_cmp(&self.points[j].distance(p)).then(i.cmp(&j))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_neighbours_across_identifications() {
        let mut idx = PointIndex::new(0.05);
        let a = idx.insert(PillowcasePoint::new(0.01, 1.0));
        let b = idx.insert(PillowcasePoint::new(0.02, TWO_PI - 1.0));
        let c = idx.insert(PillowcasePoint::new(1.0, 0.001));
        let d = idx.insert(PillowcasePoint::new(1.0, TWO_PI - 0.001));
        let e = idx.insert(PillowcasePoint::new(PI - 0.01, 2.0));
        let f = idx.insert(PillowcasePoint::new(PI, TWO_PI - 2.0));
        assert_eq!(idx.within(&PillowcasePoint::new(0.01, 1.0), 0.05), vec![a, b]);
        assert_eq!(idx.within(&PillowcasePoint::new(1.0, 0.0), 0.01), vec![c, d]);
        assert_eq!(idx.within(&PillowcasePoint::new(PI, 2.0), 0.05), vec![e, f]);
        assert_eq!(idx.nearest(&PillowcasePoint::new(1.0, 0.0009), 0.01), Some(c));
    }
}
