//! ASCII and SVG pictures of a triangle's elements.
//!
//! Row `r` from the top holds the elements whose multiplicity of `c` is
//! `n - r`, so the apex is `c̄` and the bottom row is the string on `a` and
//! `b`. Inside a row the multiplicity of `a` decreases left to right, putting
//! `ā` at the bottom-left corner and `b̄` at the bottom-right.

use std::fmt::Write as _;

use serde::Serialize;

use crate::chain::ChainEndo;
use crate::error::{Error, Result};
use crate::triangle::{Region, TriElem, TriangleSpec};

/// Beyond this `n` ASCII output is still produced but hard to read.
pub const ASCII_SOFT_LIMIT: usize = 30;
pub const SVG_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorBy {
    None,
    Region,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub elem: TriElem,
    pub endo: ChainEndo,
    /// Horizontal position in half-cell units.
    pub x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub rows: Vec<Vec<Cell>>,
}

impl Layout {
    pub fn new(spec: &TriangleSpec) -> Layout {
        let n = spec.n();
        let rows = (0..=n)
            .map(|r| {
                let m = n - r;
                (0..=r)
                    .map(|j| {
                        let elem = TriElem { k: r - j, l: j, m };
                        Cell {
                            elem,
                            endo: spec.endo(elem).expect("multiplicities sum to n"),
                            x: n - r + 2 * j,
                        }
                    })
                    .collect()
            })
            .collect();
        Layout { rows }
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.rows.iter().flatten()
    }
}

pub fn ascii_soft_limit_exceeded(spec: &TriangleSpec) -> bool {
    spec.n() > ASCII_SOFT_LIMIT
}

pub fn render(spec: &TriangleSpec, mode: Mode, color_by: ColorBy) -> Result<String> {
    match mode {
        Mode::Ascii => Ok(render_ascii(spec, color_by)),
        Mode::Svg => render_svg(spec, color_by),
    }
}

fn cell_text(spec: &TriangleSpec, cell: &Cell, color_by: ColorBy) -> String {
    match color_by {
        ColorBy::None => format!("[{}]", cell.endo),
        ColorBy::Region => format!("{}[{}]", spec.region_of(&cell.endo).letter(), cell.endo),
    }
}

fn legend(spec: &TriangleSpec, layout: &Layout) -> Vec<String> {
    Region::ALL
        .into_iter()
        .map(|r| {
            let count = layout
                .cells()
                .filter(|c| spec.region_of(&c.endo) == r)
                .count();
            format!(
                "{} {:<6} {:>4}  {}",
                r.letter(),
                r.key(),
                count,
                r.description()
            )
        })
        .collect()
}

pub fn render_ascii(spec: &TriangleSpec, color_by: ColorBy) -> String {
    let layout = Layout::new(spec);
    let texts: Vec<Vec<String>> = layout
        .rows
        .iter()
        .map(|row| row.iter().map(|c| cell_text(spec, c, color_by)).collect())
        .collect();
    let width = texts
        .iter()
        .flatten()
        .map(|t| t.chars().count())
        .max()
        .unwrap_or(1);
    // an even pitch keeps half-cell offsets on whole columns
    let pitch = (width + 2) / 2 * 2;
    let mut out = String::new();
    let _ = writeln!(out, "{spec}");
    for (row, cells) in layout.rows.iter().zip(&texts) {
        let mut line = String::new();
        for (cell, text) in row.iter().zip(cells) {
            let col = cell.x * pitch / 2;
            let centered = col + (width - text.chars().count()) / 2;
            while line.chars().count() < centered {
                line.push(' ');
            }
            line.push_str(text);
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    if color_by == ColorBy::Region {
        out.push('\n');
        for l in legend(spec, &layout) {
            let _ = writeln!(out, "{}", l.trim_end());
        }
    }
    out
}

/// Okabe-Ito colors, one per region.
fn fill(region: Region) -> &'static str {
    match region {
        Region::NilA => "#E69F00",
        Region::NilB => "#56B4E9",
        Region::NilC => "#009E73",
        Region::LPar => "#F0E442",
        Region::RPar => "#0072B2",
        Region::LTri => "#D55E00",
        Region::RTri => "#CC79A7",
        Region::RightIdentities => "#BBBBBB",
    }
}

pub fn render_svg(spec: &TriangleSpec, color_by: ColorBy) -> Result<String> {
    if spec.n() > SVG_LIMIT {
        return Err(Error::UnsupportedSize {
            n: spec.n(),
            mode: "svg",
            limit: SVG_LIMIT,
        });
    }
    let layout = Layout::new(spec);
    let longest = layout
        .cells()
        .map(|c| cell_text(spec, c, color_by).chars().count())
        .max()
        .unwrap_or(1);
    let cell_w = 8 * longest + 12;
    let cell_h = 24;
    let gap = 6;
    let margin = 10;
    let header = 24;
    let rows = layout.rows.len();
    let width = 2 * margin + rows * (cell_w + gap) - gap;
    let legend_h = if color_by == ColorBy::Region {
        8 * 18 + 10
    } else {
        0
    };
    let height = header + 2 * margin + rows * (cell_h + gap) - gap + legend_h;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{margin}" y="{}" font-family="monospace" font-size="14">{spec}</text>"#,
        margin + 12
    );
    for (r, row) in layout.rows.iter().enumerate() {
        let y = header + margin + r * (cell_h + gap);
        for cell in row {
            let x = margin + cell.x * (cell_w + gap) / 2;
            let color = match color_by {
                ColorBy::None => "#FFFFFF",
                ColorBy::Region => fill(spec.region_of(&cell.endo)),
            };
            let _ = writeln!(
                out,
                r##"<rect x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" fill="{color}" stroke="#000000"/>"##
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="13" text-anchor="middle">{}</text>"#,
                x + cell_w / 2,
                y + 16,
                cell_text(spec, cell, color_by)
            );
        }
    }
    if color_by == ColorBy::Region {
        let top = header + 2 * margin + rows * (cell_h + gap);
        for (i, (region, line)) in Region::ALL
            .into_iter()
            .zip(legend(spec, &layout))
            .enumerate()
        {
            let y = top + i * 18;
            let _ = writeln!(
                out,
                r##"<rect x="{margin}" y="{y}" width="14" height="14" fill="{}" stroke="#000000"/>"##,
                fill(region)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{}</text>"#,
                margin + 20,
                y + 11,
                line.trim_end()
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_shape() {
        let t = TriangleSpec::new(4, 1, 2, 3).unwrap();
        let l = Layout::new(&t);
        assert_eq!(l.rows.len(), 5);
        assert_eq!(l.cells().count(), 15);
        assert_eq!(l.rows[0][0].endo.to_string(), "3_4");
        let base: Vec<String> = l.rows[4].iter().map(|c| c.endo.to_string()).collect();
        assert_eq!(base, vec!["1_4", "1_3 2", "1_2 2_2", "1 2_3", "2_4"]);
    }

    #[test]
    fn ascii_has_no_trailing_space_or_tabs() {
        let t = TriangleSpec::new(6, 1, 3, 4).unwrap();
        for color in [ColorBy::None, ColorBy::Region] {
            let s = render_ascii(&t, color);
            assert!(s.lines().all(|l| !l.ends_with(' ')));
            assert!(!s.contains('\t'));
            assert_eq!(s, render_ascii(&t, color));
        }
    }

    #[test]
    fn identity_triangle_has_one_e_cell() {
        let t = TriangleSpec::new(3, 0, 1, 2).unwrap();
        let s = render_ascii(&t, ColorBy::Region);
        assert_eq!(s.matches("E[").count(), 1);
        assert!(s.contains("E[0 1 2]"));
    }

    #[test]
    fn svg_limits() {
        let t = TriangleSpec::new(201, 0, 1, 2).unwrap();
        assert!(matches!(
            render(&t, Mode::Svg, ColorBy::None),
            Err(Error::UnsupportedSize { .. })
        ));
        let t = TriangleSpec::new(4, 1, 2, 3).unwrap();
        let svg = render(&t, Mode::Svg, ColorBy::Region).unwrap();
        assert_eq!(svg.matches("<rect").count(), 15 + 8);
        assert!(!svg.contains("<path") && !svg.contains("<circle"));
    }
}
