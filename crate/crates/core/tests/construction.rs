mod common;

use std::collections::BTreeSet;

use planeweave::exactgeom::{int, Point};
use planeweave::graphs::{degeneracy_order, generate_lower_bound_graph, heights, random_2degenerate, DegenerateGraph};
use planeweave::layout::{
    construct_drawing, construct_drawing_traced, reflect_and_swap, ColoredDrawing, EdgeColor, LayoutError,
};
use planeweave::verify::{check_feasible, color_class_is_forest, colors_used, monochromatic_crossings};
use proptest::prelude::*;

use common::perturbation_violations;

fn assert_every_level_feasible(g: &DegenerateGraph) -> ColoredDrawing {
    let c = construct_drawing_traced(g).unwrap();
    for lv in &c.levels {
        let report = check_feasible(&lv.drawing, &c.normalized, lv.height).unwrap();
        assert!(report.overall(), "level {}:\n{report}", lv.height);
        let bad = perturbation_violations(&lv.reflected, &lv.slope, &lv.epsilon);
        assert!(bad.is_empty(), "level {}: {bad:?}", lv.height);
    }
    assert!(monochromatic_crossings(&c.drawing).is_empty());
    for col in EdgeColor::ALL {
        assert!(color_class_is_forest(&c.drawing, col), "color {col} has a cycle");
    }
    c.drawing
}

#[test]
fn empty_graph_sits_on_the_diagonal() {
    let g = degeneracy_order(5, &[]).unwrap();
    let d = construct_drawing(&g).unwrap();
    for i in 0..5 {
        assert_eq!(d.position(i), Some(&Point::from_ints(i as i64, i as i64)));
    }
    assert!(d.colors().is_empty());
}

#[test]
fn triangle() {
    let g = degeneracy_order(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let d = assert_every_level_feasible(&g);
    assert_eq!(d.colors().len(), 3);
    assert!(colors_used(&d) <= 4);
    // The apex's two predecessor edges differ in color.
    let apex = *g.order().last().unwrap();
    let ps = g.preds(apex);
    assert_ne!(d.color_of(ps[0], apex), d.color_of(ps[1], apex));
}

#[test]
fn lower_bound_graphs() {
    for n in [3, 4] {
        let g = generate_lower_bound_graph(n, 1).unwrap();
        let d = assert_every_level_feasible(&g);
        assert_eq!(d.vertex_count(), g.vertex_count());
        assert_eq!(d.colors().len(), g.edge_count());
    }
}

#[test]
fn random_graphs_every_level() {
    for seed in 0..12 {
        let n = 5 + 3 * seed as usize;
        assert_every_level_feasible(&random_2degenerate(n, seed));
    }
}

#[test]
fn top_level_uses_h_and_hs() {
    let g = random_2degenerate(30, 9);
    let c = construct_drawing_traced(&g).unwrap();
    let hm = heights(&c.normalized);
    for lv in &c.levels {
        for &v in &hm.levels[lv.height] {
            let ps = c.normalized.preds(v);
            let got: BTreeSet<EdgeColor> = ps.iter().map(|&p| lv.drawing.color_of(p, v).unwrap()).collect();
            assert_eq!(got, BTreeSet::from([EdgeColor::H, EdgeColor::Hs]), "vertex {v}");
        }
    }
}

/// Simple cycles of a small graph, each as a vertex list, by brute force.
fn cycles(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let adj: BTreeSet<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    let mut out = Vec::new();
    fn extend(path: &mut Vec<usize>, n: usize, adj: &BTreeSet<(usize, usize)>, out: &mut Vec<Vec<usize>>) {
        let (first, last) = (path[0], *path.last().unwrap());
        if path.len() >= 3 && adj.contains(&(last, first)) && path[1] < last {
            out.push(path.clone());
        }
        for v in first + 1..n {
            if !path.contains(&v) && adj.contains(&(last, v)) {
                path.push(v);
                extend(path, n, adj, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        extend(&mut vec![s], n, &adj, &mut out);
    }
    out
}

#[test]
fn highest_vertex_of_every_cycle_sees_two_colors() {
    for seed in 0..6 {
        let g = random_2degenerate(9, 100 + seed);
        let d = construct_drawing(&g).unwrap();
        let hm = heights(&g);
        let pos: Vec<usize> = {
            let mut p = vec![0; g.vertex_count()];
            for (i, &v) in g.order().iter().enumerate() {
                p[v] = i;
            }
            p
        };
        for cyc in cycles(g.vertex_count(), g.edges()) {
            let top = (0..cyc.len()).max_by_key(|&i| (hm.height[cyc[i]], pos[cyc[i]])).unwrap();
            let (prev, next) = (cyc[(top + cyc.len() - 1) % cyc.len()], cyc[(top + 1) % cyc.len()]);
            assert_ne!(d.color_of(prev, cyc[top]), d.color_of(next, cyc[top]), "cycle {cyc:?}");
        }
    }
}

#[test]
fn determinism() {
    let g = random_2degenerate(40, 21);
    assert_eq!(construct_drawing(&g).unwrap(), construct_drawing(&g).unwrap());
}

#[test]
fn single_row_has_no_slope() {
    let mut d = ColoredDrawing::new([(0, Point::from_ints(0, 0)), (1, Point::from_ints(3, 0))].into(), []);
    assert!(matches!(planeweave::layout::choose_slope(&d), Err(LayoutError::DegenerateInput(_))));
    d.set_position(1, Point::from_ints(0, 0));
    assert!(matches!(planeweave::layout::choose_epsilon(&d, &int(1)), Err(LayoutError::DegenerateInput(_))));
}

fn small_drawing() -> impl Strategy<Value = ColoredDrawing> {
    prop::collection::btree_set((-50i64..50, -50i64..50), 2..9).prop_map(|pts| {
        let pos = pts.into_iter().enumerate().map(|(i, (x, y))| (i, Point::from_ints(x, y))).collect();
        ColoredDrawing::new(pos, [])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn slope_and_offset_satisfy_every_constraint(d in small_drawing()) {
        prop_assume!(d.positions().values().map(|p| &p.y).collect::<BTreeSet<_>>().len() > 1);
        let m = planeweave::layout::choose_slope(&d).unwrap();
        let eps = planeweave::layout::choose_epsilon(&d, &m).unwrap();
        prop_assert_eq!(perturbation_violations(&d, &m, &eps), Vec::<String>::new());
    }

    #[test]
    fn reflection_is_an_involution(d in small_drawing()) {
        prop_assert_eq!(reflect_and_swap(&reflect_and_swap(&d)), d);
    }

    #[test]
    fn random_graphs_draw_feasibly(n in 3usize..25, seed in 0u64..1000) {
        assert_every_level_feasible(&random_2degenerate(n, seed));
    }
}
