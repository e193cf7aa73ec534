//! Classes of extensions, squares, double extensions and the category of
//! extensions with its lifted class.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limit::{compute_pullback, Cone};
use crate::morphism::{compose, FinMorphism};
use crate::object::Obj;

/// The distinguished class of morphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionClass {
    Surjections,
    SplitEpis,
    Isomorphisms,
    All,
    /// Morphisms whose underlying function has a section.
    SetSplit,
}

impl ExtensionClass {
    pub const ALL_CLASSES: [ExtensionClass; 5] = [
        ExtensionClass::Surjections,
        ExtensionClass::SplitEpis,
        ExtensionClass::Isomorphisms,
        ExtensionClass::All,
        ExtensionClass::SetSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExtensionClass::Surjections => "surjections",
            ExtensionClass::SplitEpis => "split-epis",
            ExtensionClass::Isomorphisms => "isomorphisms",
            ExtensionClass::All => "all",
            ExtensionClass::SetSplit => "set-split",
        }
    }

    pub fn member(self, f: &FinMorphism) -> bool {
        match self {
            ExtensionClass::Surjections => f.is_surjective(),
            ExtensionClass::SplitEpis => f.is_split_epi().is_some(),
            ExtensionClass::Isomorphisms => f.is_iso(),
            ExtensionClass::All => true,
            ExtensionClass::SetSplit => f.set_section().is_some(),
        }
    }
}

impl fmt::Display for ExtensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtensionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL_CLASSES
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                Error::Validation(format!(
                    "unknown class {s:?} (expected surjections, split-epis, isomorphisms, all or set-split)"
                ))
            })
    }
}

/// A category equipped with a class of extensions, enough structure for
/// double extensions and axiom audits.
pub trait ClassedCategory: Sync {
    type Obj: Clone + Eq + Hash + fmt::Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + fmt::Debug + Send + Sync;
    type Cone: Send + Sync;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    /// `f ∘ g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn is_iso(&self, f: &Self::Mor) -> bool;
    fn member(&self, f: &Self::Mor) -> Result<bool>;
    /// Pullback of the cospan `f, g`, or `None` when it does not exist in
    /// this category.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Option<Self::Cone>>;
    /// The legs toward `dom f` and `dom g`.
    fn cone_legs(&self, c: &Self::Cone) -> (Self::Mor, Self::Mor);
    fn mediate(&self, c: &Self::Cone, u: &Self::Mor, v: &Self::Mor) -> Result<Self::Mor>;
    fn describe(&self, f: &Self::Mor) -> String;
}

/// Finite sets or finite algebras with a base class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Base {
    pub class: ExtensionClass,
}

impl Base {
    pub fn new(class: ExtensionClass) -> Self {
        Base { class }
    }
}

impl ClassedCategory for Base {
    type Obj = Obj;
    type Mor = FinMorphism;
    type Cone = Cone;

    fn dom(&self, f: &FinMorphism) -> Obj {
        f.dom().clone()
    }

    fn cod(&self, f: &FinMorphism) -> Obj {
        f.cod().clone()
    }

    fn compose(&self, f: &FinMorphism, g: &FinMorphism) -> Result<FinMorphism> {
        compose(f, g)
    }

    fn identity(&self, x: &Obj) -> FinMorphism {
        FinMorphism::identity(x)
    }

    fn is_iso(&self, f: &FinMorphism) -> bool {
        f.is_iso()
    }

    fn member(&self, f: &FinMorphism) -> Result<bool> {
        Ok(self.class.member(f))
    }

    fn pullback(&self, f: &FinMorphism, g: &FinMorphism) -> Result<Option<Cone>> {
        compute_pullback(f, g).map(Some)
    }

    fn cone_legs(&self, c: &Cone) -> (FinMorphism, FinMorphism) {
        (c.leg("p0").clone(), c.leg("p1").clone())
    }

    fn mediate(&self, c: &Cone, u: &FinMorphism, v: &FinMorphism) -> Result<FinMorphism> {
        c.mediate_ordered(u.dom(), &[u, v])
    }

    fn describe(&self, f: &FinMorphism) -> String {
        describe_map(f)
    }
}

pub(crate) fn describe_map(f: &FinMorphism) -> String {
    let t: Vec<String> = f.table().iter().map(|v| v.to_string()).collect();
    format!("{}->{} [{}]", f.dom().size(), f.cod().size(), t.join(" "))
}

/// A commutative square, read as the morphism `a → b` of arrows:
///
/// ```text
///  A1 --f1--> B1
///  |a         |b
///  A0 --f0--> B0
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Square<M> {
    pub a: M,
    pub b: M,
    pub f1: M,
    pub f0: M,
}

pub type SquareArrow = Square<FinMorphism>;

impl<M: Clone + PartialEq> Square<M> {
    /// Swaps the two directions: `a ↔ f1`, `b ↔ f0`.
    pub fn transpose(&self) -> Square<M> {
        Square {
            a: self.f1.clone(),
            b: self.f0.clone(),
            f1: self.a.clone(),
            f0: self.b.clone(),
        }
    }

    pub fn checked<C: ClassedCategory<Mor = M>>(cat: &C, a: M, b: M, f1: M, f0: M) -> Result<Self> {
        let left = cat.compose(&f0, &a)?;
        let right = cat.compose(&b, &f1)?;
        if left != right {
            return Err(Error::NonCommuting("(∅,0,1)".into()));
        }
        Ok(Square { a, b, f1, f0 })
    }
}

impl SquareArrow {
    pub fn new(a: FinMorphism, b: FinMorphism, f1: FinMorphism, f0: FinMorphism) -> Result<Self> {
        Square::checked(&Base::new(ExtensionClass::All), a, b, f1, f0)
    }

    pub fn identity_on(f: &FinMorphism) -> Self {
        Square {
            a: f.clone(),
            b: f.clone(),
            f1: FinMorphism::identity(f.dom()),
            f0: FinMorphism::identity(f.cod()),
        }
    }
}

/// The pullback of `f0` and `b` with the comparison `⟨a, f1⟩` into it,
/// or `None` when the pullback does not exist.
pub fn square_comparison<C: ClassedCategory>(
    cat: &C,
    s: &Square<C::Mor>,
) -> Result<Option<(C::Cone, C::Mor)>> {
    match cat.pullback(&s.f0, &s.b)? {
        None => Ok(None),
        Some(pb) => {
            let c = cat.mediate(&pb, &s.a, &s.f1)?;
            Ok(Some((pb, c)))
        }
    }
}

/// All four sides and the comparison to the pullback are extensions.
pub fn is_double_extension<C: ClassedCategory>(cat: &C, s: &Square<C::Mor>) -> Result<bool> {
    for m in [&s.a, &s.b, &s.f1, &s.f0] {
        if !cat.member(m)? {
            return Ok(false);
        }
    }
    match square_comparison(cat, s)? {
        None => Ok(false),
        Some((_, c)) => cat.member(&c),
    }
}

/// The category of extensions of `C` (objects: members of the class,
/// morphisms: commutative squares) with the class of double extensions.
#[derive(Debug, Clone)]
pub struct Lifted<C> {
    pub base: C,
}

pub fn lift_class<C: ClassedCategory>(base: C) -> Lifted<C> {
    Lifted { base }
}

pub struct LiftedCone<C: ClassedCategory> {
    top: C::Cone,
    bottom: C::Cone,
    p0: Square<C::Mor>,
    p1: Square<C::Mor>,
    apex: C::Mor,
}

impl<C: ClassedCategory> ClassedCategory for Lifted<C> {
    type Obj = C::Mor;
    type Mor = Square<C::Mor>;
    type Cone = LiftedCone<C>;

    fn dom(&self, f: &Square<C::Mor>) -> C::Mor {
        f.a.clone()
    }

    fn cod(&self, f: &Square<C::Mor>) -> C::Mor {
        f.b.clone()
    }

    fn compose(&self, g: &Square<C::Mor>, f: &Square<C::Mor>) -> Result<Square<C::Mor>> {
        if f.b != g.a {
            return Err(Error::Composition(
                "squares do not share the middle arrow".into(),
            ));
        }
        Ok(Square {
            a: f.a.clone(),
            b: g.b.clone(),
            f1: self.base.compose(&g.f1, &f.f1)?,
            f0: self.base.compose(&g.f0, &f.f0)?,
        })
    }

    fn identity(&self, x: &C::Mor) -> Square<C::Mor> {
        Square {
            a: x.clone(),
            b: x.clone(),
            f1: self.base.identity(&self.base.dom(x)),
            f0: self.base.identity(&self.base.cod(x)),
        }
    }

    fn is_iso(&self, f: &Square<C::Mor>) -> bool {
        self.base.is_iso(&f.f1) && self.base.is_iso(&f.f0)
    }

    fn member(&self, f: &Square<C::Mor>) -> Result<bool> {
        is_double_extension(&self.base, f)
    }

    fn pullback(&self, f: &Square<C::Mor>, g: &Square<C::Mor>) -> Result<Option<LiftedCone<C>>> {
        let top = match self.base.pullback(&f.f1, &g.f1)? {
            Some(c) => c,
            None => return Ok(None),
        };
        let bottom = match self.base.pullback(&f.f0, &g.f0)? {
            Some(c) => c,
            None => return Ok(None),
        };
        let (t0, t1) = self.base.cone_legs(&top);
        let (b0, b1) = self.base.cone_legs(&bottom);
        let u = self.base.compose(&f.a, &t0)?;
        let v = self.base.compose(&g.a, &t1)?;
        let apex = self.base.mediate(&bottom, &u, &v)?;
        if !self.base.member(&apex)? {
            return Ok(None);
        }
        let p0 = Square {
            a: apex.clone(),
            b: f.a.clone(),
            f1: t0,
            f0: b0,
        };
        let p1 = Square {
            a: apex.clone(),
            b: g.a.clone(),
            f1: t1,
            f0: b1,
        };
        Ok(Some(LiftedCone {
            top,
            bottom,
            p0,
            p1,
            apex,
        }))
    }

    fn cone_legs(&self, c: &LiftedCone<C>) -> (Square<C::Mor>, Square<C::Mor>) {
        (c.p0.clone(), c.p1.clone())
    }

    fn mediate(
        &self,
        c: &LiftedCone<C>,
        u: &Square<C::Mor>,
        v: &Square<C::Mor>,
    ) -> Result<Square<C::Mor>> {
        let f1 = self.base.mediate(&c.top, &u.f1, &v.f1)?;
        let f0 = self.base.mediate(&c.bottom, &u.f0, &v.f0)?;
        Ok(Square {
            a: u.a.clone(),
            b: c.apex.clone(),
            f1,
            f0,
        })
    }

    fn describe(&self, f: &Square<C::Mor>) -> String {
        format!(
            "square(a: {}, b: {}, f1: {}, f0: {})",
            self.base.describe(&f.a),
            self.base.describe(&f.b),
            self.base.describe(&f.f1),
            self.base.describe(&f.f0)
        )
    }
}
