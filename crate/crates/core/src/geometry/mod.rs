//! Small dense linear algebra, the momentum-sphere atlas and its frames,
//! Lorentz transforms, and sphere meshes.

mod frame;
mod linalg;
mod lorentz;
mod mesh;

pub use frame::{
    pole_frame, rotation_from_axis_angle, standard_frame, standard_frame_guarded, Chart, Frame, MomentumPoint,
    POLE_GUARD, ZERO_MOMENTUM_EPSILON,
};
pub use linalg::{max_abs_diff3, minkowski_dot, CVec3, Mat3, Mat4, Vec3, METRIC, X_HAT, Y_HAT, Z_HAT};
pub use lorentz::{boost_from_rapidity, boost_from_velocity, LorentzTransform, LORENTZ_TOLERANCE};
pub use mesh::{build_mesh, polygon_solid_angle, triangle_solid_angle, MeshSpec, SphereMesh};
