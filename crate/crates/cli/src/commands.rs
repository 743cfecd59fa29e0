use latcover::input::{load_lattice, load_points, parse_cell_params, parse_matrix, parse_point};
use latcover::{
    check_cell, copy_counts, enumerate_ps, neighbors_within, pairwise_distances, reduce, relevant_vectors,
    voronoi_cell, Basis, MinImage, PeriodicPointSet,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{self, csv_num, num, nums, to_json};
use crate::verify::{self, Report};
use crate::{CellArgs, Cli, Command, Format, LatticeArgs};

pub struct Output {
    pub text: String,
    pub verify: Option<Report>,
}

pub fn lattice_of(a: &LatticeArgs) -> Result<Basis, CliError> {
    if let Some(path) = &a.lattice_file {
        return Ok(load_lattice(path)?);
    }
    match (&a.lattice, &a.cell_params) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --lattice or --cell-params, not both".into())),
        (Some(m), None) => Ok(parse_matrix(m)?),
        (None, Some(p)) => Ok(parse_cell_params(p)?),
        (None, None) => {
            Err(CliError::Usage("a lattice is required: --lattice, --cell-params or --lattice-file".into()))
        }
    }
}

fn cell_of(a: &CellArgs, lattice: &Basis) -> Result<Basis, CliError> {
    if let Some(path) = &a.cell_file {
        return Ok(load_lattice(path)?);
    }
    match &a.cell {
        Some(m) => Ok(parse_matrix(m)?),
        None => Ok(lattice.clone()),
    }
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let csv_ok = matches!(cli.command, Command::Matrix { .. } | Command::Neighbors { .. });
    if cli.format == Format::Csv && !csv_ok {
        return Err(CliError::Usage("--format csv is only available for matrix and neighbors".into()));
    }
    let v = cli.verify;
    let (text, report) = match &cli.command {
        Command::Reduce(l) => reduce_cmd(&lattice_of(l)?, v)?,
        Command::Relevant(l) => relevant_cmd(&lattice_of(l)?, v)?,
        Command::Voronoi(l) => voronoi_cmd(&lattice_of(l)?, v)?,
        Command::Copies { lattice, cell } => {
            let b = lattice_of(lattice)?;
            let c = cell_of(cell, &b)?;
            let counts = copy_counts(&c, &b)?;
            let report = v.then(|| verify::block(&c, &b, &counts.layers)).transpose()?;
            (to_json(&output::copies(&counts)), report)
        }
        Command::Cells(l) => cells_cmd(&lattice_of(l)?, v)?,
        Command::CheckCell { lattice, cell } => {
            let b = lattice_of(lattice)?;
            let c = cell_of(cell, &b)?;
            let r = check_cell(&c, &b)?;
            let j = json!({
                "sufficient": r.sufficient,
                "ps_member": r.ps_member,
                "is_reduced": r.is_reduced,
                "coeffs": output::int_columns(&r.coeffs),
                "copies": output::copies(&r.copies),
            });
            let report = v.then(|| verify::block(&c, &b, &r.copies.layers)).transpose()?;
            (to_json(&j), report)
        }
        Command::Dist { lattice, p1, p2 } => {
            let b = lattice_of(lattice)?;
            let (p1, p2) = (parse_point(p1)?, parse_point(p2)?);
            let r = MinImage::new(&b)?.distance(&p1, &p2)?;
            let report = v.then(|| verify::distances(&b, &[(p1, p2, r.distance)])).transpose()?;
            (to_json(&json!({"distance": num(r.distance), "image": output::vector(&r.image)})), report)
        }
        Command::Matrix { lattice, points } => {
            let b = lattice_of(lattice)?;
            let (pts, labels) = load_points(points)?;
            let mut ps = PeriodicPointSet::new(b.clone(), pts)?;
            if let Some(l) = labels {
                ps = ps.with_labels(l)?;
            }
            let m = pairwise_distances(&ps)?;
            let report = if v {
                let p = ps.points();
                let mut cases = Vec::new();
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        cases.push((p[i].clone(), p[j].clone(), m[i][j]));
                    }
                }
                Some(verify::distances(&b, &cases)?)
            } else {
                None
            };
            (matrix_text(cli.format, &m, ps.labels()), report)
        }
        Command::Neighbors { lattice, points, cutoff } => {
            let b = lattice_of(lattice)?;
            let (pts, labels) = load_points(points)?;
            let mut ps = PeriodicPointSet::new(b, pts)?;
            if let Some(l) = labels {
                ps = ps.with_labels(l)?;
            }
            let nb = neighbors_within(&ps, *cutoff)?;
            let report = v.then(|| verify::neighbors(&ps, *cutoff, &nb)).transpose()?;
            (neighbors_text(cli.format, &nb), report)
        }
        Command::Render { lattice, cell, out } => {
            let b = lattice_of(lattice)?;
            let c = cell_of(cell, &b)?;
            let svg = crate::svg::render_2d(&b, &c)?;
            std::fs::write(out, svg).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            let report = v.then(|| verify::block(&c, &b, &copy_counts(&c, &b)?.layers)).transpose()?;
            (String::new(), report)
        }
    };
    Ok(Output { text, verify: report })
}

type Result2 = Result<(String, Option<Report>), CliError>;

fn reduce_cmd(b: &Basis, v: bool) -> Result2 {
    let r = reduce(b)?;
    let j = json!({
        "basis": output::columns(r.basis()),
        "transform": output::int_columns(r.transform()),
        "inverse_transform": output::int_columns(&r.inverse_transform()),
        "superbase": r.superbase().iter().map(output::vector).collect::<Vec<_>>(),
        "obtuse": r.is_obtuse(),
        "cell_parameters": nums(&r.basis().cell_parameters()),
    });
    let report = v.then(|| verify::reduction(b, &r)).transpose()?;
    Ok((to_json(&j), report))
}

fn relevant_cmd(b: &Basis, v: bool) -> Result2 {
    let rel = relevant_vectors(b)?;
    let j = json!({
        "pairs": rel.pairs(),
        "count": rel.count(),
        "vectors": rel.vectors().iter().map(|x| output::vector(&x.coeffs)).collect::<Vec<_>>(),
        "cartesian": rel.vectors().iter().map(|x| nums(x.cart.coords())).collect::<Vec<_>>(),
    });
    let report = v.then(|| verify::relevant(&rel)).transpose()?;
    Ok((to_json(&j), report))
}

fn voronoi_cmd(b: &Basis, v: bool) -> Result2 {
    let cell = voronoi_cell(b)?;
    let facets: Vec<Value> = (0..cell.halfspaces().len())
        .map(|f| {
            let h = &cell.halfspaces()[f];
            json!({
                "coeffs": output::vector(&h.coeffs),
                "normal": nums(h.normal.coords()),
                "offset": num(h.offset),
                "vertices": cell.facet_vertices(f),
            })
        })
        .collect();
    let j = json!({
        "vertices": cell.vertices().iter().map(|x| nums(x.coords())).collect::<Vec<_>>(),
        "facets": facets,
        "volume": num(cell.volume()),
    });
    let report = v.then(|| verify::voronoi(b, &cell)).transpose()?;
    Ok((to_json(&j), report))
}

fn cells_cmd(b: &Basis, v: bool) -> Result2 {
    let cands = enumerate_ps(b)?;
    let j: Vec<Value> = cands
        .iter()
        .map(|c| {
            json!({
                "coeffs": output::int_columns(&c.coeffs),
                "basis": output::columns(&c.basis),
                "h": nums(&c.copies.h),
            })
        })
        .collect();
    let report = if v {
        let mut all = Report::default();
        for c in &cands {
            all.merge(verify::block(&c.basis, b, &c.copies.layers)?);
        }
        all.lines.push(format!("{} cells checked", cands.len()));
        Some(all)
    } else {
        None
    };
    Ok((to_json(&Value::Array(j)), report))
}

fn matrix_text(f: Format, m: &[Vec<f64>], labels: Option<&[String]>) -> String {
    match f {
        Format::Json => {
            let mut j = json!({"distances": m.iter().map(|r| nums(r)).collect::<Vec<_>>()});
            if let Some(l) = labels {
                j["labels"] = json!(l);
            }
            to_json(&j)
        }
        Format::Csv => {
            let mut s = String::new();
            if let Some(l) = labels {
                s.push_str(&l.join(","));
                s.push('\n');
            }
            for row in m {
                s.push_str(&row.iter().map(|&x| csv_num(x)).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            s
        }
    }
}

fn neighbors_text(f: Format, nb: &[latcover::Neighbor]) -> String {
    match f {
        Format::Json => {
            let j: Vec<Value> = nb
                .iter()
                .map(|x| json!({"i": x.i, "j": x.j, "image": output::vector(&x.image), "distance": num(x.distance)}))
                .collect();
            to_json(&Value::Array(j))
        }
        Format::Csv => {
            let n = nb.first().map_or(0, |x| x.image.dim());
            let mut s = String::from("i,j");
            for k in 0..n {
                s.push_str(&format!(",t{k}"));
            }
            s.push_str(",distance\n");
            for x in nb {
                s.push_str(&format!("{},{}", x.i, x.j));
                for c in x.image.coeffs() {
                    s.push_str(&format!(",{c}"));
                }
                s.push_str(&format!(",{}\n", csv_num(x.distance)));
            }
            s
        }
    }
}
