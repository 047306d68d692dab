use crate::error::{Error, Result};
use crate::sim::Circuit;
use crate::tree::{parse_leaf_string, TreeShape};
use crate::walk::arithmetic::{
    build_decrement, build_increment, build_rotate_left, build_rotate_right,
};
use crate::walk::diffusion::{build_diffusion, build_walk_operator};
use crate::walk::oracle::{build_oracle, OracleSpec};
use crate::walk::reflections::{build_reflection_u, build_reflection_uprime};
use crate::walk::step::build_walk_step;

/// Parameters a named circuit builder may consume.
#[derive(Clone, Debug, Default)]
pub struct BuildParams {
    pub levels: Option<usize>,
    pub qubits: Option<usize>,
    pub n_leaves: Option<usize>,
    pub leaves: Option<String>,
}

impl BuildParams {
    fn levels(&self, builder: &'static str) -> Result<TreeShape> {
        let l = self.levels.ok_or(Error::MissingBuildParam {
            builder,
            param: "levels",
        })?;
        TreeShape::new(l)
    }

    fn qubits(&self, builder: &'static str) -> Result<usize> {
        self.qubits.ok_or(Error::MissingBuildParam {
            builder,
            param: "qubits",
        })
    }

    fn oracle_spec(&self, builder: &'static str, shape: TreeShape) -> Result<OracleSpec> {
        let s = self.leaves.as_ref().ok_or(Error::MissingBuildParam {
            builder,
            param: "leaves",
        })?;
        let leaves = parse_leaf_string(s)?;
        if leaves.len() != shape.n_leaves() {
            return Err(Error::LeafCountMismatch {
                expected: shape.n_leaves(),
                got: leaves.len(),
            });
        }
        Ok(OracleSpec::Exact(leaves))
    }
}

/// A named circuit builder, dispatchable from the CLI.
pub trait CircuitBuilder: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn build(&self, params: &BuildParams) -> Result<Circuit>;
}

macro_rules! builder {
    ($ty:ident, $name:literal, $about:literal, $build:expr) => {
        struct $ty;
        impl CircuitBuilder for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn about(&self) -> &'static str {
                $about
            }
            fn build(&self, params: &BuildParams) -> Result<Circuit> {
                let f: fn(&BuildParams) -> Result<Circuit> = $build;
                f(params)
            }
        }
    };
}

builder!(
    IncrementBuilder,
    "increment",
    "P: |v> -> |v+1 mod 2^n| over --qubits",
    |p| build_increment(p.qubits("increment")?)
);
builder!(
    DecrementBuilder,
    "decrement",
    "P dagger: |v> -> |v-1 mod 2^n| over --qubits",
    |p| build_decrement(p.qubits("decrement")?)
);
builder!(
    RotateLeftBuilder,
    "rotate-left",
    "M: cyclic bit rotation (doubles labels with MSB 0) over --qubits",
    |p| build_rotate_left(p.qubits("rotate-left")?)
);
builder!(
    RotateRightBuilder,
    "rotate-right",
    "M dagger: inverse rotation (halves even labels) over --qubits",
    |p| build_rotate_right(p.qubits("rotate-right")?)
);
builder!(
    WalkStepBuilder,
    "walk-step",
    "Shift step over W and C for a tree with --levels",
    |p| build_walk_step(p.levels("walk-step")?)
);
builder!(
    ReflectionUBuilder,
    "reflection-u",
    "Coin reflection about the uniform 3-direction state",
    |_p| Ok(build_reflection_u())
);
builder!(
    ReflectionUPrimeBuilder,
    "reflection-uprime",
    "Tail coin reflection; takes --n-leaves",
    |p| {
        let n = p.n_leaves.ok_or(Error::MissingBuildParam {
            builder: "reflection-uprime",
            param: "n-leaves",
        })?;
        build_reflection_uprime(n)
    }
);
builder!(
    OracleBuilder,
    "oracle",
    "Phase oracle on the walker register; takes --levels and --leaves",
    |p| {
        let shape = p.levels("oracle")?;
        build_oracle(&p.oracle_spec("oracle", shape)?, shape)
    }
);
builder!(
    DiffusionBuilder,
    "diffusion",
    "Diffusion step over W and C; takes --levels and --leaves",
    |p| {
        let shape = p.levels("diffusion")?;
        build_diffusion(shape, &p.oracle_spec("diffusion", shape)?)
    }
);
builder!(
    WalkOperatorBuilder,
    "walk-operator",
    "Diffusion followed by the walk step; takes --levels and --leaves",
    |p| {
        let shape = p.levels("walk-operator")?;
        build_walk_operator(shape, &p.oracle_spec("walk-operator", shape)?)
    }
);

/// All registered builders.
pub fn builders() -> &'static [&'static dyn CircuitBuilder] {
    &[
        &IncrementBuilder,
        &DecrementBuilder,
        &RotateLeftBuilder,
        &RotateRightBuilder,
        &WalkStepBuilder,
        &ReflectionUBuilder,
        &ReflectionUPrimeBuilder,
        &OracleBuilder,
        &DiffusionBuilder,
        &WalkOperatorBuilder,
    ]
}

pub fn find_builder(name: &str) -> Result<&'static dyn CircuitBuilder> {
    builders()
        .iter()
        .copied()
        .find(|b| b.name() == name)
        .ok_or_else(|| Error::UnknownBuilder(name.to_string()))
}
