# ============================================================================ #
#                                                                              #
#     Title: Data Utilities                                                    #
#     Purpose: Seeded random number generators and the seed fan-out used to   #
#         make every drop of an experiment independently reproducible.         #
#                                                                              #
# ============================================================================ #


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Overview                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


## --------------------------------------------------------------------------- #
##  Description                                                             ####
## --------------------------------------------------------------------------- #


"""
!!! note "Summary"

    This module owns randomness. Every sampling function in the package takes an explicit `numpy.random.Generator`; the helpers here build those generators from integer seeds and fan a master seed out into per-drop or per-block streams.

    Drop `i` of an experiment always receives the seed `derive_seed(master, i)`, which depends only on the pair `(master, i)`. Increasing the number of drops therefore never changes the results of the earlier drops.
"""


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Setup                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


## --------------------------------------------------------------------------- #
##  Imports                                                                 ####
## --------------------------------------------------------------------------- #


# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator, SeedSequence
from typeguard import typechecked


## --------------------------------------------------------------------------- #
##  Exports                                                                 ####
## --------------------------------------------------------------------------- #


__all__: list[str] = [
    "SEED",
    "get_random_generator",
    "derive_seed",
    "spawn_generators",
]


## --------------------------------------------------------------------------- #
##  Constants                                                               ####
## --------------------------------------------------------------------------- #


SEED: int = 42
MAX_SEED: int = 2**64 - 1


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Generators                                                            ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def get_random_generator(seed: int = SEED) -> RandomGenerator:
    r"""
    !!! note "Summary"
        Builds a fresh 64-bit PCG generator from an integer seed.

    ???+ abstract "Details"
        A new generator is returned on every call; sampling functions advance the generator they are given, so sharing one instance between callers would couple their streams.

    Params:
        seed (int):
            Non-negative seed, at most $2^{64}-1$.
            Default: `42`

    Raises:
        (ValueError):
            If the seed is negative or does not fit in 64 bits.

    Returns:
        (RandomGenerator):
            A `numpy.random.Generator` backed by `PCG64`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Setup"}
        >>> from v2v_urllc.utils.data import get_random_generator

        ```

        ```pycon {.py .python linenums="1" title="Example 1: Same seed, same stream"}
        >>> a = get_random_generator(7).integers(0, 1000, 3)
        >>> b = get_random_generator(7).integers(0, 1000, 3)
        >>> bool((a == b).all())
        True

        ```
    """
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"Seed must lie in [0, 2**64 - 1], got {seed}.")
    return np.random.default_rng(seed)


@typechecked
def derive_seed(master: int, index: int) -> int:
    r"""
    !!! note "Summary"
        Derives the 64-bit seed of item `index` from a master seed.

    ???+ abstract "Details"
        Uses `SeedSequence(master, spawn_key=(index,))`, the same mechanism `SeedSequence.spawn` relies on, so the derived seeds are statistically independent and depend on nothing but `(master, index)`.

    Params:
        master (int):
            The master seed of the run.
        index (int):
            Zero-based item index (drop number, block number).

    Raises:
        (ValueError):
            If either argument is negative.

    Returns:
        (int):
            A seed in $[0, 2^{64})$.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Setup"}
        >>> from v2v_urllc.utils.data import derive_seed

        ```

        ```pycon {.py .python linenums="1" title="Example 1: Stable and distinct"}
        >>> derive_seed(42, 0) == derive_seed(42, 0)
        True
        >>> derive_seed(42, 0) == derive_seed(42, 1)
        False

        ```
    """
    if master < 0 or index < 0:
        raise ValueError(f"Seeds and indices must be non-negative, got master={master}, index={index}.")
    state = SeedSequence(master, spawn_key=(index,)).generate_state(1, dtype=np.uint64)
    return int(state[0])


@typechecked
def spawn_generators(rng: RandomGenerator, count: int) -> list[RandomGenerator]:
    """
    !!! note "Summary"
        Splits one generator into `count` independent child generators, one per work block.

    Params:
        rng (RandomGenerator):
            The parent generator.
        count (int):
            Number of children.

    Returns:
        (list[RandomGenerator]):
            Independent child generators.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Example 1"}
        >>> from v2v_urllc.utils.data import get_random_generator, spawn_generators
        >>> len(spawn_generators(get_random_generator(1), 4))
        4

        ```
    """
    if count < 0:
        raise ValueError(f"Cannot spawn a negative number of generators: {count}.")
    return list(rng.spawn(count))
