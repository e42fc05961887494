//! The `contacts`, `iq`, `rho`, `project`, and `conjectures` commands.

use crate::records::{emit, Record};
use crate::{CliError, GlobalOpts};
use clap::Args;
use sphaerica::bounds;
use sphaerica::contacts::{
    build_contact_graph, edge_count, irreducible_by_count, irreducible_by_faces,
    is_maximal_packing,
};
use sphaerica::geom::SphericalCode;
use sphaerica::io;
use sphaerica::isoperimetric::{
    circumscribe, circumscribe_monte_carlo, conjectured_iq_report, dual_goldberg_bound,
    projection_report, rho, rho_d, McEstimate,
};
use sphaerica::solids;
use std::path::PathBuf;

fn input_code(points: &Option<PathBuf>, solid: &Option<String>) -> Result<SphericalCode, CliError> {
    match (points, solid) {
        (Some(path), None) => crate::load_points(path),
        (None, Some(name)) => solids::tangency_points(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown solid {name:?}; expected tetrahedron, cube, octahedron, dodecahedron, or icosahedron"
            ))
        }),
        (None, None) => Err(CliError::Usage(
            "provide a point-set file or --solid NAME".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "provide either a point-set file or --solid, not both".into(),
        )),
    }
}

#[derive(Debug, Args)]
pub struct ContactsArgs {
    /// Point-set file ({"dimension": 3, "points": [...]}).
    points: PathBuf,
    /// Graph export path.
    #[arg(long)]
    export: Option<PathBuf>,
}

pub fn run_contacts(global: &GlobalOpts, args: ContactsArgs) -> Result<(), CliError> {
    let code = crate::load_points(&args.points)?;
    let tol = global.tol.unwrap_or(1e-6);
    let graph = build_contact_graph(&code, tol)?;
    let maximal = is_maximal_packing(&graph);
    let mut rec = Record::new("contact_graph")
        .u("vertices", graph.vertices.len() as u64)
        .u("edges", edge_count(&graph) as u64)
        .f("contact_distance", graph.contact_distance)
        .f("tolerance", graph.tolerance)
        .f("min_edge_length", graph.min_edge_length)
        .f("max_edge_length", graph.max_edge_length)
        .b("is_maximal_packing", maximal.is_maximal)
        .b("maximality_suspicious", maximal.suspicious)
        .b("irreducible_by_count", irreducible_by_count(&graph));
    if let Some(k) = maximal.kappa {
        rec = rec.u("kappa", k as u64);
    }
    match &graph.faces {
        Some(faces) => {
            rec = rec.u("faces", faces.len() as u64);
            rec = match irreducible_by_faces(&graph) {
                Ok(b) => rec.b("irreducible_by_faces", b),
                Err(_) => rec.s("irreducible_by_faces", "not applicable"),
            };
        }
        None => {
            rec = rec.s("faces", "not applicable (disconnected)");
            rec = rec.s("irreducible_by_faces", "not applicable");
        }
    }
    if let Some(path) = args.export {
        io::save_graph(&path, &graph)?;
        rec = rec.s("export", path.display().to_string());
    }
    emit(&[rec], global.format());
    Ok(())
}

#[derive(Debug, Args)]
pub struct IqArgs {
    /// Tangency-point file; alternative to --solid.
    points: Option<PathBuf>,
    /// Named Platonic solid circumscribed about the unit sphere.
    #[arg(long)]
    solid: Option<String>,
    /// Sample budget for the Monte Carlo path (dimension > 3).
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Polyhedron export path.
    #[arg(long)]
    export: Option<PathBuf>,
}

pub fn run_iq(global: &GlobalOpts, args: IqArgs) -> Result<(), CliError> {
    let code = input_code(&args.points, &args.solid)?;
    if code.dim() != 3 {
        let seed = global.require_seed()?;
        let body = circumscribe_monte_carlo(&code, args.samples, seed)?;
        let iq = body.iq()?;
        let rec = Record::new("iq_monte_carlo")
            .u("dimension", body.dimension as u64)
            .u("tangency_points", code.len() as u64)
            .f("surface_area", body.surface_area.value)
            .f("surface_area_stderr", body.surface_area.stderr)
            .f("volume", body.volume.value)
            .f("volume_stderr", body.volume.stderr)
            .f("iq", iq.value)
            .f("iq_stderr", iq.stderr)
            .f("volume_identity_sigma", body.volume_identity_sigma())
            .u("samples", body.samples)
            .u("seed", seed);
        emit(&[rec], global.format());
        return Ok(());
    }

    let p = circumscribe(&code)?;
    let report = projection_report(&p)?;
    let f = p.face_count() as u32;
    let goldberg = bounds::goldberg_ft_rhs(f)?;
    let dual = dual_goldberg_bound(f)?;
    let iq = p.iq();
    let rec = Record::new("iq")
        .u("faces", f as u64)
        .u("vertices", p.vertex_count() as u64)
        .u("edges", p.edge_count() as u64)
        .f("surface_area", p.surface_area)
        .f("volume", p.volume)
        .f("iq", iq)
        .f("volume_identity_residual", p.volume_identity_residual())
        .f("voronoi_area_sum_check", report.face_area_sum_check)
        .f("delaunay_area_sum_check", report.delaunay_area_sum_check())
        .f("preimage_surface_residual", report.relative_surface_residual())
        .f("projected_vertex_match", report.projected_vertex_match)
        .f("goldberg_bound", goldberg)
        .f("goldberg_margin", goldberg - iq)
        .f("dual_bound", dual)
        .f("dual_margin", dual - iq);
    if let Some(path) = args.export {
        let doc = io::PolyhedronExport {
            tangency_points: p
                .tangency_points
                .points()
                .iter()
                .map(|q| q.coords().to_vec())
                .collect(),
            vertices: p.vertices.iter().map(|v| v.to_vec()).collect(),
            faces: p.faces.iter().map(|fc| fc.vertex_ids.clone()).collect(),
            surface_area: p.surface_area,
            volume: p.volume,
            iq,
        };
        io::save_polyhedron(&path, &doc)?;
    }
    emit(&[rec], global.format());
    Ok(())
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    /// Spherical area of the regular triangle (d = 3) or simplex (d > 3).
    #[arg(long, value_parser = crate::angle_arg)]
    t: f64,
    #[arg(long, default_value_t = 3)]
    dim: u32,
    /// Monte Carlo samples for dimensions above 3.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
}

pub fn run_rho(global: &GlobalOpts, args: RhoArgs) -> Result<(), CliError> {
    let rec = if args.dim == 3 {
        let v = rho(args.t)?;
        Record::new("rho")
            .u("dimension", 3)
            .f("t", args.t)
            .f("value", v)
            .s("method", "closed_form")
            .f("error_estimate", 0.0)
    } else {
        let seed = global.require_seed()?;
        let est = rho_d(args.dim, args.t, args.samples, seed)?;
        Record::new("rho")
            .u("dimension", args.dim as u64)
            .f("t", args.t)
            .f("value", est.value)
            .s("method", "monte_carlo")
            .f("stderr", est.stderr)
            .u("samples", args.samples)
            .u("seed", seed)
    };
    emit(&[rec], global.format());
    Ok(())
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Tangency-point file; alternative to --solid.
    points: Option<PathBuf>,
    #[arg(long)]
    solid: Option<String>,
}

pub fn run_project(global: &GlobalOpts, args: ProjectArgs) -> Result<(), CliError> {
    let code = input_code(&args.points, &args.solid)?;
    let p = circumscribe(&code)?;
    let r = projection_report(&p)?;
    let mut records = vec![Record::new("projection_summary")
        .u("faces", p.face_count() as u64)
        .u("delaunay_cells", r.delaunay_areas.len() as u64)
        .f("surface_area", p.surface_area)
        .f("voronoi_area_sum_check", r.face_area_sum_check)
        .f("delaunay_area_sum_check", r.delaunay_area_sum_check())
        .f("preimage_area_sum", r.preimage_area_sum)
        .f("preimage_surface_residual", r.relative_surface_residual())
        .f("projected_vertex_match", r.projected_vertex_match)
        .f("quadrature_error", r.quadrature_error)];
    for (i, area) in r.voronoi_areas.iter().enumerate() {
        records.push(
            Record::new("voronoi_cell")
                .u("face", i as u64)
                .f("spherical_area", *area),
        );
    }
    for (i, (area, lift)) in r
        .delaunay_areas
        .iter()
        .zip(r.preimage_areas.iter())
        .enumerate()
    {
        records.push(
            Record::new("delaunay_cell")
                .u("cell", i as u64)
                .f("spherical_area", *area)
                .f("lifted_area", *lift),
        );
    }
    emit(&records, global.format());
    Ok(())
}

#[derive(Debug, Args)]
pub struct ConjecturesArgs {
    /// Tangency-point file; alternative to --solid.
    points: Option<PathBuf>,
    #[arg(long)]
    solid: Option<String>,
    /// Monte Carlo samples for dimensions above 3.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
}

pub fn run_conjectures(global: &GlobalOpts, args: ConjecturesArgs) -> Result<(), CliError> {
    let code = input_code(&args.points, &args.solid)?;
    let mut records = Vec::new();

    if code.dim() == 3 {
        let p = circumscribe(&code)?;
        let iq = p.iq();
        let f = p.face_count() as u32;
        let v = p.vertex_count() as u32;
        let e = p.edge_count() as u32;
        let f3v2 = p.surface_area.powi(3) / (p.volume * p.volume);

        let vc = bounds::ft_vertex_conjecture_rhs(v)?;
        records.push(
            Record::new("conjecture")
                .s("bound_name", "ft_vertex_conj")
                .f("lhs", f3v2)
                .f("rhs", vc.f3_over_v2)
                .f("margin", f3v2 - vc.f3_over_v2)
                .f("stderr", 0.0)
                .s("status", "conjectured bound"),
        );
        match bounds::ft_edge_conjecture_rhs(f, v, e) {
            Ok(ec) => records.push(
                Record::new("conjecture")
                    .s("bound_name", "ft_edge_conj")
                    .f("lhs", f3v2)
                    .f("rhs", ec.f3_over_v2)
                    .f("margin", f3v2 - ec.f3_over_v2)
                    .f("stderr", 0.0)
                    .s("status", "conjectured bound"),
            ),
            Err(err) => records.push(
                Record::new("conjecture")
                    .s("bound_name", "ft_edge_conj")
                    .s("status", format!("not applicable: {err}")),
            ),
        }

        let report = conjectured_iq_report(
            McEstimate {
                value: iq,
                stderr: 0.0,
            },
            3,
            p.vertex_count() as u64,
            p.face_count() as u64,
            args.samples,
            0,
        )?;
        push_iq_conjectures(&mut records, &report);
    } else {
        let seed = global.require_seed()?;
        let body = circumscribe_monte_carlo(&code, args.samples, seed)?;
        let iq = body.iq()?;
        // Vertex and facet counts of a general-dimension body are not
        // derivable from the Monte Carlo construction; for the simplex case
        // (n = d + 1) every tangency point is a facet and v = d + 1.
        let n = code.len() as u64;
        let d = code.dim() as u32;
        if n != d as u64 + 1 {
            return Err(CliError::Usage(
                "in dimensions above 3, conjecture reports support only simplex bodies (d+1 tangency points)".into(),
            ));
        }
        let report = conjectured_iq_report(iq, d, n, n, args.samples, seed)?;
        push_iq_conjectures(&mut records, &report);
    }
    emit(&records, global.format());
    Ok(())
}

fn push_iq_conjectures(
    records: &mut Vec<Record>,
    report: &sphaerica::isoperimetric::ConjectureReport,
) {
    records.push(
        Record::new("conjecture")
            .s("bound_name", "iq_vertex_form")
            .u("dimension", report.dimension as u64)
            .u("v", report.vertex_count)
            .f("lhs", report.iq.value)
            .f("rhs", report.vertex_form_rhs.value)
            .f("margin", report.vertex_margin())
            .f("stderr", report.vertex_margin_stderr())
            .s("status", report.label.clone()),
    );
    records.push(
        Record::new("conjecture")
            .s("bound_name", "iq_facet_form")
            .u("dimension", report.dimension as u64)
            .u("n", report.facet_count)
            .f("lhs", report.iq.value)
            .f("rhs", report.facet_form_rhs.value)
            .f("margin", report.facet_margin())
            .f("stderr", report.facet_margin_stderr())
            .s("status", report.label.clone()),
    );
}
