use num_bigint::BigInt;
use num_traits::One;

use crate::arith::IntMat;
use crate::icosa::Icosa;
use crate::monodromy::{cusp_data, elliptic_count, Convention, CosetCertificate, CuspData, EllipticData, LocalMonodromy};
use crate::surface::{
    EdgeLagrangian, Homology, K6Certificate, Mod3Witness, SpecialIntersections, SplitCertificate, SurfaceComplex, TrcLagrangian,
    VHomLattice,
};
use crate::Result;

/// Choices that determine every computed number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Exchange `E` and `ιE`.
    pub swap_tetrads: bool,
    pub convention: Convention,
    /// Corrupt one entry of `∂_2` after construction.
    pub inject_fault: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { swap_tetrads: false, convention: Convention::Standard, inject_fault: false }
    }
}

/// All objects the checks inspect, built once.
#[derive(Clone, Debug)]
pub struct Context {
    pub options: Options,
    pub icosa: Icosa,
    pub surface: SurfaceComplex,
    pub homology: Homology,
    pub vhom: VHomLattice,
    pub special: SpecialIntersections,
    pub trc_lagrangian: TrcLagrangian,
    pub k6: K6Certificate,
    pub edge_lagrangian: EdgeLagrangian,
    pub splits: Vec<SplitCertificate>,
    pub mod3: Vec<Mod3Witness>,
    pub monodromy: LocalMonodromy,
    pub cosets: CosetCertificate,
    pub cusps: CuspData,
    pub elliptic: EllipticData,
}

impl Context {
    pub fn build(options: Options) -> Result<Context> {
        let icosa = Icosa::with_split(options.swap_tetrads)?;
        let (model, group) = (&icosa.model, &icosa.group);
        let mut surface = SurfaceComplex::build(model, group)?;
        let homology = Homology::build(&surface)?;
        let vhom = VHomLattice::build(&surface, &homology, group, &icosa.split)?;
        let special = SpecialIntersections::compute(&surface, &homology, &vhom.u);
        let trc_lagrangian = TrcLagrangian::build(&surface, &homology, group, &icosa.cubes)?;
        let k6 = K6Certificate::build(&surface, group)?;
        let edge_lagrangian = EdgeLagrangian::build(&surface, &homology, group, &k6)?;
        let trc_basis = IntMat::identity(homology.rank()).submatrix(0..homology.rank(), 0..homology.rank() / 2);
        let splits = vec![
            SplitCertificate::build("L_trc", &trc_basis, &homology, group, &vhom)?,
            SplitCertificate::build("L_edge", &edge_lagrangian.basis, &homology, group, &vhom)?,
        ];
        let mod3 = Mod3Witness::all(&surface, &icosa.split)?;
        let monodromy = LocalMonodromy::build(&homology, &vhom, group)?;
        let cosets = CosetCertificate::build(&monodromy.table.rho_edge, &monodromy.table.rho_trc);
        let cusps = cusp_data(&cosets)?;
        let elliptic = elliptic_count(&cosets)?;
        if options.inject_fault {
            *surface.boundary2.get_mut(0, 0) += BigInt::one();
        }
        Ok(Context {
            options,
            icosa,
            surface,
            homology,
            vhom,
            special,
            trc_lagrangian,
            k6,
            edge_lagrangian,
            splits,
            mod3,
            monodromy,
            cosets,
            cusps,
            elliptic,
        })
    }
}
