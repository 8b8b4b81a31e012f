//! Independent reference implementations and fixtures shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tda_core::ingest::SchemaConfig;
use tda_core::rips::SimplexTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..d).map(|_| rng.gen_range(0.0..1.0)).collect()).collect()
}

pub fn circle(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            vec![a.cos(), a.sin()]
        })
        .collect()
}

pub fn noisy_circle(seed: u64, n: usize, noise: f64) -> Vec<Vec<f64>> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let a = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = 1.0 + rng.gen_range(-noise..noise);
            vec![r * a.cos(), r * a.sin()]
        })
        .collect()
}

pub fn points_csv(rows: &[Vec<f64>]) -> String {
    let mut s = String::new();
    let d = rows.first().map_or(0, Vec::len);
    let header: Vec<String> = (0..d).map(|j| format!("x{j}")).collect();
    let _ = writeln!(s, "{}", header.join(","));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| format!("{v:?}")).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

/// Bars as `(dimension, birth, death)`, sorted.
pub type Bars = Vec<(usize, f64, f64)>;

pub fn sort_bars(mut bars: Bars) -> Bars {
    bars.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)));
    bars
}

/// Textbook column reduction over Z2 on the full boundary matrix of the
/// tree's filtration, with faces looked up by vertex list.
pub fn naive_bars(tree: &SimplexTree, max_homology_dim: usize) -> Bars {
    let order = tree.simplices_in_filtration_order();
    let index: HashMap<Vec<usize>, usize> =
        order.iter().enumerate().map(|(i, (s, _))| (s.vertices().to_vec(), i)).collect();
    let mut columns: Vec<Vec<usize>> = order
        .iter()
        .map(|(s, _)| {
            let v = s.vertices();
            let mut col: Vec<usize> = if v.len() < 2 {
                Vec::new()
            } else {
                (0..v.len())
                    .map(|skip| {
                        let face: Vec<usize> =
                            v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                        index[&face]
                    })
                    .collect()
            };
            col.sort_unstable();
            col
        })
        .collect();

    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    let mut paired = vec![false; order.len()];
    let mut bars = Vec::new();
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match low_owner.get(&low) {
                Some(&k) => {
                    let other = columns[k].clone();
                    let mut merged = Vec::new();
                    let (mut a, mut b) = (0, 0);
                    let col = &columns[j];
                    while a < col.len() || b < other.len() {
                        if b == other.len() || (a < col.len() && col[a] < other[b]) {
                            merged.push(col[a]);
                            a += 1;
                        } else if a == col.len() || other[b] < col[a] {
                            merged.push(other[b]);
                            b += 1;
                        } else {
                            a += 1;
                            b += 1;
                        }
                    }
                    columns[j] = merged;
                }
                None => break,
            }
        }
        if let Some(&low) = columns[j].last() {
            low_owner.insert(low, j);
            paired[low] = true;
            paired[j] = true;
            let dim = order[low].0.dimension();
            let (birth, death) = (order[low].1, order[j].1);
            if dim <= max_homology_dim && death > birth {
                bars.push((dim, birth, death));
            }
        }
    }
    for (i, (s, f)) in order.iter().enumerate() {
        if !paired[i] && s.dimension() <= max_homology_dim {
            bars.push((s.dimension(), *f, f64::INFINITY));
        }
    }
    sort_bars(bars)
}

/// Connected components of the graph on `points` with edges of length <= t.
pub fn components_at(points: &[Vec<f64>], t: f64) -> usize {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut count = n;
    for i in 0..n {
        for j in i + 1..n {
            if dist(&points[i], &points[j]) <= t {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    count -= 1;
                }
            }
        }
    }
    count
}

/// DBSCAN from the definitions: core points, clusters as components of the
/// core graph, each border point in the cluster whose lowest core index is
/// smallest among the clusters that reach it. `None` is noise.
pub fn dbscan_oracle(points: &[Vec<f64>], eps: f64, min_samples: usize) -> Vec<Option<usize>> {
    let n = points.len();
    let near = |i: usize, j: usize| dist(&points[i], &points[j]) <= eps;
    let core: Vec<bool> = (0..n).map(|i| (0..n).filter(|&j| near(i, j)).count() >= min_samples).collect();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if !core[s] || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if core[j] && comp[j] == usize::MAX && near(i, j) {
                    comp[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    (0..n)
        .map(|i| {
            if core[i] {
                Some(comp[i])
            } else {
                (0..n).filter(|&j| core[j] && near(i, j)).map(|j| comp[j]).min()
            }
        })
        .collect()
}

/// True when `a` and `b` agree up to a bijective renaming of cluster ids.
pub fn same_partition(a: &[Option<usize>], b: &[Option<usize>]) -> bool {
    let mut fwd: BTreeMap<usize, usize> = BTreeMap::new();
    let mut back: BTreeMap<usize, usize> = BTreeMap::new();
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| match (x, y) {
            (None, None) => true,
            (Some(x), Some(y)) => *fwd.entry(*x).or_insert(*y) == *y && *back.entry(*y).or_insert(*x) == *x,
            _ => false,
        })
}

/// CDC-layout CSV under the default schema. `rows` holds
/// `(jurisdiction, year, week, counts)`; causes beyond `counts` are blank.
pub fn cdc_csv(rows: &[(String, i32, u32, Vec<u64>)]) -> String {
    let schema = SchemaConfig::default();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["Data As Of".to_string(), schema.jurisdiction.clone(), schema.year.clone(), schema.week.clone()];
    header.extend(schema.causes.iter().cloned());
    w.write_record(&header).unwrap();
    for (j, year, week, counts) in rows {
        let mut rec = vec!["10/01/2023".to_string(), j.clone(), year.to_string(), week.to_string()];
        rec.extend((0..schema.causes.len()).map(|c| counts.get(c).map_or(String::new(), |v| v.to_string())));
        w.write_record(&rec).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Three jurisdictions of one region over two full years. Every cause
/// follows the same annual cycle in each year, shifted by a per-state level.
pub fn seasonal_fixture() -> String {
    let n_causes = SchemaConfig::default().causes.len();
    let mut rows = Vec::new();
    for (j, name) in ["Texas", "Florida", "Georgia"].iter().enumerate() {
        for year in [2020, 2021] {
            for week in 1..=52u32 {
                let counts = (0..n_causes)
                    .map(|c| {
                        let level = 500.0 + 200.0 * j as f64 + 10.0 * c as f64;
                        let season = 20.0 * (std::f64::consts::TAU * week as f64 / 52.0 + 0.7 * c as f64).sin();
                        (level + season).round() as u64
                    })
                    .collect();
                rows.push((name.to_string(), year, week, counts));
            }
        }
    }
    cdc_csv(&rows)
}

pub fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}
