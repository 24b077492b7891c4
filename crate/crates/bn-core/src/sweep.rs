//! Exhaustive generators for skew shapes and Brill-Noether data, used by the
//! invariant checks and the test suites.

use crate::shapes::{shape_from_bn_data, BrillNoetherData, SkewShape};

/// Every skew shape with between 1 and `max_boxes` boxes, up to translation.
///
/// Two stacked rows that share no column give the same poset however far apart
/// they are, so such gaps are generated with width at most one column. Rows
/// touching only at a corner are generated separately from rows with a gap.
pub fn all_skew_shapes(max_boxes: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    fn grow(rows: &mut Vec<(i64, i64)>, left: usize, out: &mut Vec<SkewShape>) {
        let &(s, e) = rows.last().expect("at least one row");
        let mut top_first = rows.clone();
        top_first.reverse();
        out.push(SkewShape::from_rows(top_first).expect("generated rows are valid"));
        for ns in s..=e + 2 {
            for ne in ns.max(e)..ns + left as i64 {
                let len = (ne - ns + 1) as usize;
                if len > left {
                    break;
                }
                rows.push((ns, ne));
                grow(rows, left - len, out);
                rows.pop();
            }
        }
    }
    for len in 1..=max_boxes {
        rows.push((0, len as i64 - 1));
        grow(&mut rows, max_boxes - len, &mut out);
        rows.pop();
    }
    out.sort();
    out
}

/// Connected shapes only, in the same order.
pub fn connected_skew_shapes(max_boxes: usize) -> Vec<SkewShape> {
    all_skew_shapes(max_boxes)
        .into_iter()
        .filter(crate::shapes::is_connected)
        .collect()
}

fn monotone_tuples(len: usize, max: usize, increasing: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(len, v, max, cur, out);
            cur.pop();
        }
    }
    rec(len, 0, max, &mut Vec::new(), &mut out);
    if !increasing {
        for t in &mut out {
            t.reverse();
        }
    }
    out
}

/// All data with the given `rho`, `g <= max_g`, ramification entries `<= max_entry`,
/// and a shape with no empty row.
pub fn bn_data_with_rho(rho: i64, max_g: usize, max_entry: usize) -> Vec<BrillNoetherData> {
    let mut out = Vec::new();
    for g in 0..=max_g {
        let boxes = g as i64 - rho;
        if boxes < 1 {
            continue;
        }
        let boxes = boxes as usize;
        for r in 0..boxes {
            for w in 0..=boxes / (r + 1) {
                let d = g + r - w;
                for alpha in monotone_tuples(r + 1, max_entry, true) {
                    for beta in monotone_tuples(r + 1, max_entry, false) {
                        let Ok(data) = BrillNoetherData::new(g, r, d, alpha.clone(), beta) else {
                            continue;
                        };
                        if data.rho() == rho && shape_from_bn_data(&data).is_ok() {
                            out.push(data);
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_shape_families() {
        // one box; two boxes: row, column, corner pair, gapped pair
        assert_eq!(all_skew_shapes(1).len(), 1);
        assert_eq!(all_skew_shapes(2).iter().filter(|s| s.n() == 2).count(), 4);
        assert_eq!(connected_skew_shapes(2).iter().filter(|s| s.n() == 2).count(), 3);
    }

    #[test]
    fn shapes_are_distinct_and_normalized() {
        let all = all_skew_shapes(6);
        let keys: BTreeSet<_> = all.iter().map(|s| s.normalized_rows()).collect();
        assert_eq!(keys.len(), all.len());
        assert!(all.iter().all(|s| s.origin() == 0));
    }

    #[test]
    fn data_sweep_contains_known_cases() {
        let d = bn_data_with_rho(1, 6, 3);
        assert!(d.contains(&BrillNoetherData::unramified(5, 1, 4).unwrap()));
        assert!(d.contains(&BrillNoetherData::new(4, 1, 4, vec![0, 1], vec![0, 0]).unwrap()));
        assert!(d.iter().all(|x| x.rho() == 1));
        let z = bn_data_with_rho(0, 7, 2);
        assert!(z.contains(&BrillNoetherData::unramified(4, 1, 3).unwrap()));
    }

    #[test]
    fn shape_sizes_match_rho() {
        for data in bn_data_with_rho(1, 6, 3) {
            assert_eq!(shape_from_bn_data(&data).unwrap().n(), data.g - 1);
        }
    }
}
