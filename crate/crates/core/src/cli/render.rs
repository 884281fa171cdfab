//! Text, DOT and SVG renderings.

use std::fmt::Write;

use crate::chambers::ChamberStructure;
use crate::dynkin::{DynkinDiagram, DynkinType};
use crate::error::Result;
use crate::knitting::KnitTrace;
use crate::linalg::linear_form;

use super::spec::aliases;

/// Canonical labels, δ and adjacency of an affine diagram.
pub fn describe(diagram: &str) -> Result<String> {
    let ty: DynkinType = diagram.parse()?;
    let d = DynkinDiagram::build(ty);
    let mut out = d.to_string();
    let max = d.deltas().iter().max().copied().unwrap_or(1);
    writeln!(out, "sum of deltas {}, highest delta {max}", d.deltas().iter().sum::<u32>()).unwrap();
    if let Some(table) = aliases().get(&ty.to_string()) {
        let names: Vec<String> = table.iter().map(|(k, v)| format!("{k}={}", d.label(*v))).collect();
        writeln!(out, "aliases: {}", names.join(", ")).unwrap();
    }
    Ok(out)
}

fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "C+".into()
    } else {
        word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Undirected chamber adjacency graph; edges carry the mutation slot.
pub fn skeleton_dot(s: &ChamberStructure) -> String {
    let d = s.config.diagram();
    let mut out = String::new();
    writeln!(out, "graph skeleton {{").unwrap();
    writeln!(
        out,
        "  label=\"affine {} retaining {}\";",
        d.ty(),
        s.config.slots().iter().map(|&v| d.label(v)).collect::<Vec<_>>().join(", ")
    )
    .unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for (i, c) in s.chambers.iter().enumerate() {
        writeln!(out, "  c{i} [label=\"{}\"];", word_label(&c.word)).unwrap();
    }
    for e in &s.skeleton {
        let mut attrs = vec![format!("tooltip=\"{}\"", e.wall)];
        if let Some(slot) = e.slot {
            attrs.insert(0, format!("label=\"{}\"", slot + 1));
        }
        if e.configuration_changing {
            attrs.push("style=bold".into());
        }
        writeln!(out, "  c{} -- c{} [{}];", e.a, e.b, attrs.join(", ")).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// The walls of a two-dimensional fan, one line through the origin each.
pub fn wall_fan_svg(s: &ChamberStructure) -> String {
    const C: f64 = 150.0;
    const R: f64 = 120.0;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"300\" height=\"300\" viewBox=\"0 0 300 300\">"
    )
    .unwrap();
    writeln!(out, "  <title>{} chambers, {} walls</title>", s.chambers.len(), s.walls.len()).unwrap();
    writeln!(out, "  <style>.wall {{ stroke: black; stroke-width: 1 }} text {{ font: 9px sans-serif }}</style>").unwrap();
    for w in &s.walls {
        let (a, b) = (w.coeffs()[0] as f64, w.coeffs()[1] as f64);
        // direction of the line a t1 + b t2 = 0
        let n = (a * a + b * b).sqrt();
        let (dx, dy) = (-b / n, a / n);
        let (x1, y1) = (C + R * dx, C - R * dy);
        let (x2, y2) = (C - R * dx, C + R * dy);
        writeln!(
            out,
            "  <line class=\"wall\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>"
        )
        .unwrap();
        writeln!(out, "  <text x=\"{x1:.3}\" y=\"{y1:.3}\">{} = 0</text>", linear_form(w.coeffs())).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

pub fn knit_text(trace: &KnitTrace, d: &DynkinDiagram) -> String {
    let mut out = String::new();
    let x = &trace.exchange;
    writeln!(out, "pivot {} (slot {})", d.label(x.pivot_vertex), x.pivot_slot + 1).unwrap();
    for (k, col) in trace.columns.iter().enumerate() {
        let cells: Vec<String> = col
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, c)| format!("{}:{c}", d.label(v)))
            .collect();
        let cells = if cells.is_empty() { "0".to_string() } else { cells.join(" ") };
        write!(out, "  step {k}: {cells}").unwrap();
        if let Some(h) = trace.harvested.get(k).filter(|h| !h.is_empty()) {
            let cells: Vec<String> = h.iter().map(|(v, c)| format!("{}:{c}", d.label(*v))).collect();
            write!(out, "  harvest {}", cells.join(" ")).unwrap();
        }
        writeln!(out).unwrap();
    }
    let b: Vec<String> = x
        .b
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(v, m)| format!("{}^{m}", d.label(*v)))
        .collect();
    writeln!(
        out,
        "  0 -> {} -> {} -> {} -> 0",
        d.label(x.new_vertex),
        b.join(" + "),
        d.label(x.pivot_vertex)
    )
    .unwrap();
    out
}

pub fn chambers_text(s: &ChamberStructure) -> String {
    let d = s.config.diagram();
    let mut out = String::new();
    writeln!(out, "{} chambers, {} walls", s.chambers.len(), s.walls.len()).unwrap();
    writeln!(
        out,
        "walls: {}",
        s.walls.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
    )
    .unwrap();
    for (i, c) in s.chambers.iter().enumerate() {
        let ineq: Vec<String> = c
            .inequalities
            .iter()
            .map(|q| format!("{} {} 0", q.covector, if q.sign > 0 { ">" } else { "<" }))
            .collect();
        let slots: Vec<&str> = c.slots.iter().map(|&v| d.label(v)).collect();
        writeln!(out, "{i:>4}  {:<12} [{}]  {}", word_label(&c.word), slots.join(","), ineq.join(", ")).unwrap();
    }
    writeln!(
        out,
        "bounds: at least {}, at most {}; configurations up to symmetry: {}",
        s.bounds.lower, s.bounds.upper, s.automorphism_classes
    )
    .unwrap();
    out
}
