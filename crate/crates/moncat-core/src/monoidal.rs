//! Monoidal structure on a finite category, assembled and validated layer
//! by layer: tensor, unit, left/right unitors, associator, then the
//! triangle and pentagon laws together with invertibility of all structure
//! cells.

use std::fmt;
use std::sync::Arc;

use crate::fincat::{product_category, FinCat, IsoWitness, MorId, ObjId, Product};
use crate::functor::{Functor, NatTrans};
use crate::report::{LawReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorData {
    /// C x C -> C.
    pub tensor: Functor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitData {
    pub unit: ObjId,
}

/// Unitor components indexed by object; each with its inverse.
/// `left[x]: I (x) x -> x`, `right[x]: x (x) I -> x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitorData {
    pub left: Vec<IsoWitness>,
    pub right: Vec<IsoWitness>,
}

/// Associator components indexed by `(x * n + y) * n + z`;
/// `at(x,y,z): (x (x) y) (x) z -> x (x) (y (x) z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatorData {
    pub components: Vec<IsoWitness>,
}

/// The validation layer at which staged assembly failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Tensor,
    Unit,
    LeftUnitor,
    RightUnitor,
    Associator,
    Laws,
}

impl fmt::Display for Layer {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Layer::Tensor => "tensor",
            Layer::Unit => "unit",
            Layer::LeftUnitor => "left unitor",
            Layer::RightUnitor => "right unitor",
            Layer::Associator => "associator",
            Layer::Laws => "laws",
        };
        write!(out, "{name}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("monoidal assembly failed at the {layer} layer:\n{report}")]
pub struct StagedError {
    pub layer: Layer,
    pub report: LawReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalCategory {
    base: Arc<FinCat>,
    prod2: Product,
    prod3: Product,
    tensor: Functor,
    unit: ObjId,
    lunitor: Vec<IsoWitness>,
    runitor: Vec<IsoWitness>,
    assoc: Vec<IsoWitness>,
}

// Product has no PartialEq; compare through the parts that matter.
impl PartialEq for Product {
    fn eq(&self, other: &Self) -> bool {
        self.cat == other.cat && self.left == other.left && self.right == other.right
    }
}
impl Eq for Product {}

impl fmt::Debug for Product {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Product({:?} x {:?})", self.left, self.right)
    }
}

impl MonoidalCategory {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn prod2(&self) -> &Product {
        &self.prod2
    }

    pub fn prod3(&self) -> &Product {
        &self.prod3
    }

    pub fn tensor(&self) -> &Functor {
        &self.tensor
    }

    pub fn unit(&self) -> ObjId {
        self.unit
    }

    pub fn tensor_obj(&self, x: ObjId, y: ObjId) -> ObjId {
        self.tensor.ob(self.prod2.obj(x, y))
    }

    pub fn tensor_mor(&self, f: MorId, g: MorId) -> MorId {
        self.tensor.mor(self.prod2.mor(f, g))
    }

    pub fn lunitor_at(&self, x: ObjId) -> IsoWitness {
        self.lunitor[x]
    }

    pub fn runitor_at(&self, x: ObjId) -> IsoWitness {
        self.runitor[x]
    }

    pub fn assoc_at(&self, x: ObjId, y: ObjId, z: ObjId) -> IsoWitness {
        let n = self.base.n_objects();
        self.assoc[(x * n + y) * n + z]
    }

    pub fn unitors(&self) -> UnitorData {
        UnitorData {
            left: self.lunitor.clone(),
            right: self.runitor.clone(),
        }
    }

    pub fn associator(&self) -> AssociatorData {
        AssociatorData {
            components: self.assoc.clone(),
        }
    }

    /// The functor `a (x) -`.
    pub fn fix_left(&self, a: ObjId) -> Functor {
        let omap = self.base.objects().map(|x| self.tensor_obj(a, x)).collect();
        let mmap = self
            .base
            .morphisms()
            .map(|f| self.tensor_mor(self.base.identity(a), f))
            .collect();
        Functor::new(Arc::clone(&self.base), Arc::clone(&self.base), omap, mmap)
            .expect("fix_left is total by construction")
    }

    /// The functor `- (x) a`.
    pub fn fix_right(&self, a: ObjId) -> Functor {
        let omap = self.base.objects().map(|x| self.tensor_obj(x, a)).collect();
        let mmap = self
            .base
            .morphisms()
            .map(|f| self.tensor_mor(f, self.base.identity(a)))
            .collect();
        Functor::new(Arc::clone(&self.base), Arc::clone(&self.base), omap, mmap)
            .expect("fix_right is total by construction")
    }

    /// `((- (x) -) (x) -)` on (C x C) x C.
    pub fn left_assoc_functor(&self) -> Functor {
        let p3 = &self.prod3;
        let omap = p3
            .cat
            .objects()
            .map(|p| {
                let (xy, z) = p3.obj_parts(p);
                let (x, y) = self.prod2.obj_parts(xy);
                self.tensor_obj(self.tensor_obj(x, y), z)
            })
            .collect();
        let mmap = p3
            .cat
            .morphisms()
            .map(|m| {
                let (fg, h) = p3.mor_parts(m);
                let (f, g) = self.prod2.mor_parts(fg);
                self.tensor_mor(self.tensor_mor(f, g), h)
            })
            .collect();
        Functor::new(Arc::clone(&p3.cat), Arc::clone(&self.base), omap, mmap)
            .expect("left_assoc_functor is total by construction")
    }

    /// `(- (x) (- (x) -))` on (C x C) x C.
    pub fn right_assoc_functor(&self) -> Functor {
        let p3 = &self.prod3;
        let omap = p3
            .cat
            .objects()
            .map(|p| {
                let (xy, z) = p3.obj_parts(p);
                let (x, y) = self.prod2.obj_parts(xy);
                self.tensor_obj(x, self.tensor_obj(y, z))
            })
            .collect();
        let mmap = p3
            .cat
            .morphisms()
            .map(|m| {
                let (fg, h) = p3.mor_parts(m);
                let (f, g) = self.prod2.mor_parts(fg);
                self.tensor_mor(f, self.tensor_mor(g, h))
            })
            .collect();
        Functor::new(Arc::clone(&p3.cat), Arc::clone(&self.base), omap, mmap)
            .expect("right_assoc_functor is total by construction")
    }

    pub fn lunitor_nat(&self) -> NatTrans {
        NatTrans::new(
            self.fix_left(self.unit),
            Functor::identity(&self.base),
            self.lunitor.iter().map(|w| w.forward).collect(),
        )
        .expect("lunitor components are total")
    }

    pub fn runitor_nat(&self) -> NatTrans {
        NatTrans::new(
            self.fix_right(self.unit),
            Functor::identity(&self.base),
            self.runitor.iter().map(|w| w.forward).collect(),
        )
        .expect("runitor components are total")
    }

    pub fn assoc_nat(&self) -> NatTrans {
        NatTrans::new(
            self.left_assoc_functor(),
            self.right_assoc_functor(),
            self.assoc.iter().map(|w| w.forward).collect(),
        )
        .expect("associator components are total")
    }

    /// Builds without any validation; for tests and serialization.
    pub fn from_parts_unchecked(
        base: Arc<FinCat>,
        tensor: Functor,
        unit: ObjId,
        unitors: UnitorData,
        assoc: AssociatorData,
    ) -> Self {
        let prod2 = product_category(&base, &base);
        let prod3 = product_category(&prod2.cat, &base);
        MonoidalCategory {
            base,
            prod2,
            prod3,
            tensor,
            unit,
            lunitor: unitors.left,
            runitor: unitors.right,
            assoc: assoc.components,
        }
    }
}

/// Staged assembly. Layers are validated in order and the first failing
/// layer is reported by name.
pub fn assemble_monoidal(
    tensor: TensorData,
    unit: UnitData,
    unitors: UnitorData,
    assoc: AssociatorData,
) -> Result<MonoidalCategory, StagedError> {
    let base = Arc::clone(tensor.tensor.cod());
    let n = base.n_objects();
    let prod2 = product_category(&base, &base);
    let prod3 = product_category(&prod2.cat, &base);

    // Tensor layer: signature and functor laws.
    let mut tensor_report = LawReport::ok();
    if tensor.tensor.dom() != &prod2.cat {
        tensor_report.push(Violation::Signature {
            detail: "tensor domain is not the binary product of the base".into(),
        });
    }
    tensor_report.merge(tensor.tensor.check_laws());
    if !tensor_report.is_ok() {
        return Err(StagedError {
            layer: Layer::Tensor,
            report: tensor_report,
        });
    }

    // Unit layer.
    if unit.unit >= n {
        return Err(StagedError {
            layer: Layer::Unit,
            report: LawReport {
                violations: vec![Violation::Signature {
                    detail: format!("unit object o{} out of range", unit.unit),
                }],
            },
        });
    }

    let m = MonoidalCategory {
        base,
        prod2,
        prod3,
        tensor: tensor.tensor,
        unit: unit.unit,
        lunitor: unitors.left,
        runitor: unitors.right,
        assoc: assoc.components,
    };

    // Unitor layers: shape and naturality (invertibility belongs to the
    // laws layer).
    for (layer, comps) in [
        (Layer::LeftUnitor, &m.lunitor),
        (Layer::RightUnitor, &m.runitor),
    ] {
        if comps.len() != n {
            return Err(StagedError {
                layer,
                report: LawReport {
                    violations: vec![Violation::Signature {
                        detail: format!("{} components for {} objects", comps.len(), n),
                    }],
                },
            });
        }
        let nat = if layer == Layer::LeftUnitor {
            m.lunitor_nat()
        } else {
            m.runitor_nat()
        };
        let report = nat.check_naturality();
        if !report.is_ok() {
            return Err(StagedError { layer, report });
        }
    }

    // Associator layer.
    if m.assoc.len() != n * n * n {
        return Err(StagedError {
            layer: Layer::Associator,
            report: LawReport {
                violations: vec![Violation::Signature {
                    detail: format!("{} components for {} triples", m.assoc.len(), n * n * n),
                }],
            },
        });
    }
    let report = m.assoc_nat().check_naturality();
    if !report.is_ok() {
        return Err(StagedError {
            layer: Layer::Associator,
            report,
        });
    }

    // Laws layer: triangle, pentagon, invertibility.
    let report = check_monoidal_laws(&m);
    if !report.is_ok() {
        return Err(StagedError {
            layer: Layer::Laws,
            report,
        });
    }
    Ok(m)
}

/// Triangle and pentagon over all tuples, plus two-sided invertibility of
/// every unitor and associator component.
pub fn check_monoidal_laws(m: &MonoidalCategory) -> LawReport {
    let mut report = LawReport::ok();
    let base = &m.base;
    let n = base.n_objects();

    for (role, witnesses) in [
        ("left unitor", &m.lunitor),
        ("right unitor", &m.runitor),
        ("associator", &m.assoc),
    ] {
        for (i, w) in witnesses.iter().enumerate() {
            if !base.check_iso_witness(*w) {
                report.push(Violation::NotInvertible {
                    role: role.into(),
                    at: format!("index {i}"),
                    morphism: w.forward,
                });
            }
        }
    }
    if !report.is_ok() {
        // Broken witnesses make the equations below meaningless.
        return report;
    }

    let i = m.unit;
    // Triangle: assoc_{x,I,y} . (id_x (x) lunitor_y) = runitor_x (x) id_y.
    for x in 0..n {
        for y in 0..n {
            let lhs = base.comp(
                m.assoc_at(x, i, y).forward,
                m.tensor_mor(base.identity(x), m.lunitor[y].forward),
            );
            let rhs = m.tensor_mor(m.runitor[x].forward, base.identity(y));
            if lhs != rhs {
                report.push(Violation::Triangle { x, y });
            }
        }
    }

    // Pentagon:
    // (a_{w,x,y} (x) id_z) . a_{w, x(x)y, z} . (id_w (x) a_{x,y,z})
    //   = a_{w(x)x, y, z} . a_{w, x, y(x)z}.
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = base.comp_seq(&[
                        m.tensor_mor(m.assoc_at(w, x, y).forward, base.identity(z)),
                        m.assoc_at(w, m.tensor_obj(x, y), z).forward,
                        m.tensor_mor(base.identity(w), m.assoc_at(x, y, z).forward),
                    ]);
                    let rhs = base.comp(
                        m.assoc_at(m.tensor_obj(w, x), y, z).forward,
                        m.assoc_at(w, x, m.tensor_obj(y, z)).forward,
                    );
                    if lhs != rhs {
                        report.push(Violation::Pentagon { w, x, y, z });
                    }
                }
            }
        }
    }
    report
}
