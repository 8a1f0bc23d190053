//! Pipeline stages and their text/JSON renderings. Both renderings of a
//! section are produced from the same values.

use std::cell::OnceCell;

use serde::Deserialize;
use serde_json::{json, Value};

use toric_versal::base_space::{base_ideal, obstruction_space_dims, BaseIdeal, BASE_ORDER};
use toric_versal::eta::{descent, eta_star, support_data};
use toric_versal::family::{display_big, display_small, toric_ideal, EquationTag, Family};
use toric_versal::hilbert::{e_decorate, hilbert_basis, GeneratorSet};
use toric_versal::minkowski::{summand_space, SummandSpace};
use toric_versal::tangent::{gorenstein_companion, interesting_degrees, t1_dimension, t2_dimension};
use toric_versal::{cross_section, CrossSection, Error, PointedCone, Rat, Result};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Input {
    rays: Vec<Vec<i64>>,
    #[serde(rename = "R")]
    r: Vec<i64>,
    #[serde(default)]
    generator_order: Option<Vec<Vec<i64>>>,
}

pub struct Section {
    key: &'static str,
    title: &'static str,
    lines: Vec<String>,
    json: Value,
}

#[derive(Default)]
pub struct Report {
    sections: Vec<Section>,
}

impl Report {
    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("== {} ==\n", s.title));
            for l in &s.lines {
                out.push_str(l);
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for s in &self.sections {
            m.insert(s.key.to_string(), s.json.clone());
        }
        Value::Object(m)
    }
}

fn rats(v: &[Rat]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn ints(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn rat_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn t_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("t{}", i)).collect()
}

fn w_names(m: usize) -> Vec<String> {
    (1..m).map(|i| if m <= 9 { format!("w{}{}", i, i + 1) } else { format!("w{}_{}", i, i + 1) }).collect()
}

pub struct Pipeline {
    input: Input,
    max_degree: u32,
    kmax: u32,
    extra: u32,
    cone: PointedCone,
    q: OnceCell<CrossSection>,
    s: OnceCell<SummandSpace>,
    base: OnceCell<BaseIdeal>,
    gens: OnceCell<GeneratorSet>,
    tags: OnceCell<Vec<EquationTag>>,
}

impl Pipeline {
    pub fn new(src: &str, max_degree: u32, kmax: u32, extra: u32) -> Result<Pipeline> {
        let input: Input = serde_json::from_str(src).map_err(|e| Error::Input(format!("cannot parse input: {}", e)))?;
        if input.r.is_empty() {
            return Err(Error::Input("R is empty".into()));
        }
        let cone = PointedCone::from_rays(input.r.len(), &input.rays)?;
        Ok(Pipeline {
            input,
            max_degree,
            kmax,
            extra,
            cone,
            q: OnceCell::new(),
            s: OnceCell::new(),
            base: OnceCell::new(),
            gens: OnceCell::new(),
            tags: OnceCell::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.cone.rank
    }

    fn r(&self) -> &[i64] {
        &self.input.r
    }

    fn omega(&self) -> Vec<i64> {
        (0..self.rank()).map(|k| self.cone.rays.iter().map(|a| a[k]).sum()).collect()
    }

    fn q(&self) -> Result<&CrossSection> {
        if self.q.get().is_none() {
            let _ = self.q.set(cross_section(&self.cone, self.r())?);
        }
        Ok(self.q.get().unwrap())
    }

    fn s(&self) -> Result<&SummandSpace> {
        if self.s.get().is_none() {
            let _ = self.s.set(summand_space(self.q()?));
        }
        Ok(self.s.get().unwrap())
    }

    fn base(&self) -> Result<&BaseIdeal> {
        if self.base.get().is_none() {
            let _ = self.base.set(base_ideal(self.s()?, self.extra)?);
        }
        Ok(self.base.get().unwrap())
    }

    fn gens(&self) -> Result<&GeneratorSet> {
        if self.gens.get().is_none() {
            let mut g = hilbert_basis(&self.cone, self.r())?;
            if let Some(order) = &self.input.generator_order {
                g = g.reorder(order)?;
            }
            let _ = self.gens.set(e_decorate(&g, self.q()?)?);
        }
        Ok(self.gens.get().unwrap())
    }

    fn tags(&self) -> Result<&Vec<EquationTag>> {
        if self.tags.get().is_none() {
            let _ = self.tags.set(toric_ideal(self.gens()?, &self.omega(), self.max_degree)?);
        }
        Ok(self.tags.get().unwrap())
    }

    pub fn cross_section_section(&self) -> Result<Section> {
        let q = self.q()?;
        let mut lines = vec!["vertices:".to_string()];
        for (i, v) in q.vertices.iter().enumerate() {
            lines.push(format!(
                "  a{} = {}  ray {}  {}",
                i + 1,
                rats(&v.point),
                ints(&self.cone.rays[v.ray]),
                if v.lattice { "lattice" } else { "non-lattice" }
            ));
        }
        lines.push("edges:".into());
        for (i, e) in q.edges.iter().enumerate() {
            lines.push(format!("  d{} = {}  a{} -> a{}  component {}", i + 1, rats(&e.dir), e.from + 1, e.to + 1, q.edge_component[i] + 1));
        }
        if !q.tail_rays.is_empty() {
            lines.push(format!("tail rays: {}", q.tail_rays.iter().map(|t| ints(t)).collect::<Vec<_>>().join(" ")));
        }
        lines.push(format!("compact two-faces: {}", q.two_faces.len()));
        let json = json!({
            "vertices": q.vertices.iter().map(|v| json!({
                "point": rat_json(&v.point),
                "ray": self.cone.rays[v.ray],
                "lattice": v.lattice,
            })).collect::<Vec<_>>(),
            "edges": q.edges.iter().enumerate().map(|(i, e)| json!({
                "from": e.from + 1,
                "to": e.to + 1,
                "dir": rat_json(&e.dir),
                "component": q.edge_component[i] + 1,
            })).collect::<Vec<_>>(),
            "tail_rays": q.tail_rays,
            "two_faces": q.two_faces,
        });
        Ok(Section { key: "cross_section", title: "cross-section Q", lines, json })
    }

    pub fn summands_section(&self) -> Result<Section> {
        let s = self.s()?;
        let lines = vec![
            format!("dim V = {}", s.dim()),
            format!("V basis: {}", s.v_basis.iter().map(|v| ints(v)).collect::<Vec<_>>().join(" ")),
            format!("V-perp basis: {}", s.vperp.iter().map(|v| ints(v)).collect::<Vec<_>>().join(" ")),
            format!("C(Q) rays: {}", s.c_rays.iter().map(|v| ints(v)).collect::<Vec<_>>().join(" ")),
        ];
        let json = json!({ "dim": s.dim(), "v_basis": s.v_basis, "vperp": s.vperp, "c_rays": s.c_rays });
        Ok(Section { key: "summands", title: "Minkowski summands V(Q)", lines, json })
    }

    pub fn base_space_section(&self) -> Result<Section> {
        let b = self.base()?;
        let tn = t_names(b.m);
        let wn = w_names(b.m);
        let gens: Vec<String> = b.generators.iter().map(|g| g.display(&tn, BASE_ORDER)).collect();
        let wgens: Vec<String> = b.diff_generators.iter().map(|g| g.display(&wn, BASE_ORDER)).collect();
        let dims = obstruction_space_dims(b, self.kmax);
        let mut lines = vec![format!("truncation: k <= {}", b.truncation_k), "generators:".to_string()];
        lines.extend(gens.iter().map(|g| format!("  {}", g)));
        lines.push("in w_i = t_i - t_(i+1):".into());
        lines.extend(wgens.iter().map(|g| format!("  {}", g)));
        lines.push(format!("dim W_k, k = 1..{}: {}", self.kmax, ints(&dims.iter().map(|&d| d as i64).collect::<Vec<_>>())));
        let json = json!({
            "truncation_k": b.truncation_k,
            "generators": gens,
            "w_generators": wgens,
            "w_dims": dims,
        });
        Ok(Section { key: "base_space", title: "base ideal J", lines, json })
    }

    pub fn hilbert_section(&self) -> Result<Section> {
        let g = self.gens()?;
        let mut lines = Vec::new();
        let mut z = 0;
        for (i, e) in g.elements.iter().enumerate() {
            if Some(i) == g.r_index {
                lines.push(format!("  t  = {}", ints(e)));
            } else {
                z += 1;
                lines.push(format!("  z{} = {}", z, ints(e)));
            }
        }
        let json = json!({ "elements": g.elements, "R_index": g.r_index });
        Ok(Section { key: "hilbert", title: "Hilbert basis E", lines, json })
    }

    pub fn eta_table_section(&self) -> Result<Section> {
        let (q, s, g) = (self.q()?, self.s()?, self.gens()?);
        let mut lines = vec!["i | c | v(c) | lambda | eta*(c) | eta0*(c)".to_string()];
        let mut rows = Vec::new();
        for (i, (c, h)) in g.z_data().iter().enumerate() {
            let d = support_data(q, c)?;
            let (_, path) = descent(q, c)?;
            let e = eta_star(q, s, c)?;
            let v = &q.vertices[d.vertex].point;
            lines.push(format!("{} | {} | {} | {} | {} | {}", i + 1, ints(c), rats(v), ints(&path.lambda), rats(&e.coords), h));
            rows.push(json!({
                "c": c,
                "vertex": rat_json(v),
                "lambda": path.lambda,
                "eta_star": rat_json(&e.coords),
                "eta0_star": h,
            }));
        }
        Ok(Section { key: "eta_table", title: "eta* table", lines, json: Value::Array(rows) })
    }

    pub fn toric_ideal_section(&self) -> Result<Section> {
        let g = self.gens()?;
        let w = g.len() - 1;
        let tags = self.tags()?;
        let mut lines = vec![format!("{} binomials (total degree <= {})", tags.len(), self.max_degree)];
        let mut rows = Vec::new();
        for (i, t) in tags.iter().enumerate() {
            let f = display_small(&t.f(), w);
            lines.push(format!("{} | {} | {}", i, t.label(), f));
            rows.push(json!({ "tag": t.label(), "f": f }));
        }
        Ok(Section { key: "toric_ideal", title: "toric equations f", lines, json: Value::Array(rows) })
    }

    pub fn lift_section(&self) -> Result<Section> {
        let (q, s, b, g) = (self.q()?, self.s()?, self.base()?, self.gens()?);
        let fam = Family::new(q, s, b, g, &self.omega())?;
        let w = fam.w();
        let mut lines = vec!["i | tag | f | F".to_string()];
        let mut rows = Vec::new();
        for (i, t) in self.tags()?.iter().enumerate() {
            let e = fam.lift(t)?;
            let f = display_small(&e.f, w);
            let big = display_big(&e.lifted, w, s.m);
            lines.push(format!("{} | {} | {} | {}", i, t.label(), f, big));
            rows.push(json!({ "tag": t.label(), "f": f, "F": big, "rep": e.rep }));
        }
        Ok(Section { key: "lift", title: "liftings F", lines, json: Value::Array(rows) })
    }

    pub fn t1_section(&self) -> Result<Section> {
        let d = t1_dimension(&self.cone, self.r(), self.gens()?)?;
        let s = self.s()?;
        let lines = vec![
            format!("dim T1(-R) = {}", d.via_v),
            format!("  via V(Q)/1: {}", d.via_v),
            format!("  via E:      {}", d.via_e),
            format!("C(Q) rays: {}", s.c_rays.iter().map(|v| ints(v)).collect::<Vec<_>>().join(" ")),
        ];
        let json = json!({ "via_v": d.via_v, "via_e": d.via_e, "c_rays": s.c_rays });
        Ok(Section { key: "t1", title: "T1(-R)", lines, json })
    }

    pub fn t2_section(&self) -> Result<Section> {
        let g = self.gens()?;
        let dims = obstruction_space_dims(self.base()?, self.kmax);
        let mut lines = vec!["k | dim W_k | dim T2(-kR)".to_string()];
        let mut rows = Vec::new();
        for k in 1..=self.kmax {
            let t2 = t2_dimension(&self.cone, self.r(), g, k)?;
            let wk = dims[(k - 1) as usize];
            lines.push(format!("{} | {} | {}", k, wk, t2));
            rows.push(json!({ "k": k, "w": wk, "t2": t2 }));
        }
        Ok(Section { key: "t2", title: "T2(-kR)", lines, json: Value::Array(rows) })
    }

    pub fn degrees_section(&self) -> Result<Section> {
        let degs = interesting_degrees(&self.cone)?;
        let mut lines = vec![format!("R with dim V(Q(R))/1 > 0: {}", degs.iter().map(|d| ints(d)).collect::<Vec<_>>().join(" "))];
        let companion = match gorenstein_companion(&self.cone, self.r()) {
            Ok((c2, rep)) => {
                lines.push(format!("Gorenstein companion rays: {}", c2.rays.iter().map(|r| ints(r)).collect::<Vec<_>>().join(" ")));
                lines.push(format!("dim V(Q) = {}, dim V(Q') = {}", rep.dim_v, rep.dim_v_companion));
                json!({ "rays": c2.rays, "dim_v": rep.dim_v, "dim_v_companion": rep.dim_v_companion })
            }
            Err(e) => {
                lines.push(format!("Gorenstein companion: {}", e));
                json!({ "error": e.to_string() })
            }
        };
        Ok(Section { key: "degrees", title: "interesting degrees", lines, json: json!({ "degrees": degs, "companion": companion }) })
    }
}
