//! Plain-text graph exports.

use std::fmt::Write;

use relayfn_core::graphs::Graph;

/// One line per vertex, `index label: neighbor indices`, after a size header.
pub fn adjacency_text(g: &Graph) -> String {
    let mut s = format!("# vertices {} edges {}\n", g.n(), g.edge_count());
    for v in 0..g.n() {
        let _ = write!(s, "{v} {}:", g.label(v));
        for u in g.neighbors(v) {
            let _ = write!(s, " {u}");
        }
        s.push('\n');
    }
    s
}

/// Edge list `u,v,u_label,v_label` with `u < v`, lexicographic.
pub fn edge_csv(g: &Graph) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["u", "v", "u_label", "v_label"]).unwrap();
    for (u, v) in g.edges() {
        w.write_record([u.to_string(), v.to_string(), g.label(u).to_string(), g.label(v).to_string()])
            .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_exports() {
        let g = Graph::complete(3);
        assert_eq!(adjacency_text(&g), "# vertices 3 edges 3\n0 0: 1 2\n1 1: 0 2\n2 2: 0 1\n");
        assert_eq!(edge_csv(&g), "u,v,u_label,v_label\n0,1,0,1\n0,2,0,2\n1,2,1,2\n");
    }
}
