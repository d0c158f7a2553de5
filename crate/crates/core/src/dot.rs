//! Graphviz export.

use std::fmt::Write;

use crate::dbl::DoubleGroupoid;
use crate::factor::Diagram;
use crate::gpd::GroupoidTable;
use crate::io::Object;

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per object and one labelled edge per arrow, identities
/// included.
///
/// ```
/// let dot = dblgpd::dot::groupoid_dot("P3", &dblgpd::gen::pair_groupoid(3));
/// assert_eq!(dot.matches(" -> ").count(), 9);
/// ```
pub fn groupoid_dot(name: &str, g: &GroupoidTable) -> String {
    groupoid_dot_labelled(name, g, |a| format!("a{a}"))
}

fn groupoid_dot_labelled(name: &str, g: &GroupoidTable, label: impl Fn(usize) -> String) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for p in g.objects() {
        writeln!(out, "  p{};", p.0).unwrap();
    }
    for a in g.arrow_ids() {
        writeln!(
            out,
            "  p{} -> p{} [label={}];",
            g.src(a).0,
            g.end(a).0,
            quote(&label(a.0))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One record node per box, in box order, showing its frame.
pub fn double_dot(name: &str, b: &DoubleGroupoid) -> String {
    let mut out = format!("digraph {} {{\n  node [shape=record];\n", quote(name));
    for (k, fr) in b.frames().iter().enumerate() {
        writeln!(
            out,
            "  b{k} [label=\"{{b{k}|t={}|{{l={}|r={}}}|b={}}}\"];",
            fr.top.0, fr.left.0, fr.right.0, fr.bottom.0
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// The groupoid `D` with each arrow labelled by its `j`- and
/// `i`-preimages.
pub fn diagram_dot(name: &str, delta: &Diagram) -> String {
    let mut pre = vec![Vec::new(); delta.d.num_arrows()];
    for (f, a) in delta.j.arrow_map().iter().enumerate() {
        pre[a.0].push(format!("j(v{f})"));
    }
    for (x, a) in delta.i.arrow_map().iter().enumerate() {
        pre[a.0].push(format!("i(h{x})"));
    }
    groupoid_dot_labelled(name, &delta.d, |a| {
        let mut s = format!("a{a}");
        for p in &pre[a] {
            s.push_str(" = ");
            s.push_str(p);
        }
        s
    })
}

/// DOT text for any workspace object.
pub fn export_dot(name: &str, object: Object<'_>) -> String {
    match object {
        Object::Groupoid(g) => groupoid_dot(name, g),
        Object::Double(b) => double_dot(name, b),
        Object::Diagram(d) => diagram_dot(name, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::box_double;
    use crate::gen::{exact_factorization, pair_groupoid};
    use crate::groups::Group;

    #[test]
    fn unit_groupoid_is_one_loop() {
        let dot = groupoid_dot("u", &GroupoidTable::unit(1));
        assert_eq!(
            dot,
            "digraph \"u\" {\n  p0;\n  p0 -> p0 [label=\"a0\"];\n}\n"
        );
    }

    #[test]
    fn pair_groupoid_has_nine_edges() {
        let dot = groupoid_dot("P", &pair_groupoid(3));
        assert_eq!(dot.lines().filter(|l| l.ends_with("];")).count(), 9);
        assert_eq!(
            dot.lines()
                .filter(|l| l.trim_end().ends_with(';') && !l.contains("->"))
                .count(),
            3
        );
    }

    #[test]
    fn s3_box_double_has_six_records_in_order() {
        let g = Group::symmetric(3);
        let a = g.generated(&[g.element_of_perm(&[1, 0, 2])]);
        let c = g.generated(&[g.element_of_perm(&[1, 2, 0])]);
        let delta = exact_factorization(&g, &a, &c).unwrap();
        let b = box_double(&delta).unwrap();
        let dot = double_dot("B", &b);
        let records: Vec<&str> = dot.lines().filter(|l| l.contains("label=")).collect();
        assert_eq!(records.len(), 6);
        for (k, line) in records.iter().enumerate() {
            assert!(line.trim_start().starts_with(&format!("b{k} ")));
        }
        assert_eq!(dot, double_dot("B", &b));
        assert!(diagram_dot("S3", &delta).contains("j(v1)"));
    }
}
