import click
import inject

from app.commands.common import emit, fail, file_argument, read_matrix, read_vector, resolution_option, tol_option, tolerances
from app.constants import I4
from app.schemas import ConeClass
from app.services.conespec import ConeSpectrumService
from app.services.errors import ConeError
from app.services.numkernel import NumericKernelService


@click.command("spectral")
@file_argument
@tol_option
def spectral(file, tol):
    """Birkhoff report of FILE: spectral radius, peripheral spectrum and Perron vector."""
    try:
        report = inject.instance(ConeSpectrumService).birkhoff_report(read_matrix(file), tolerances(tol))
    except ConeError as e:
        fail(e)

    emit("spectral", report, holds=report.birkhoff_holds)


@click.command("irreducible")
@file_argument
@resolution_option
@tol_option
def irreducible(file, resolution, tol):
    """Decide K-irreducibility of the Mueller matrix in FILE."""
    try:
        decision = inject.instance(ConeSpectrumService).is_K_irreducible(read_matrix(file), tolerances(tol), resolution)
    except ConeError as e:
        fail(e)

    emit("irreducible", decision, holds=decision.holds)


@click.command("primitive")
@file_argument
@resolution_option
@tol_option
def primitive(file, resolution, tol):
    """Decide K-primitivity of the Mueller matrix in FILE."""
    try:
        decision = inject.instance(ConeSpectrumService).is_K_primitive(read_matrix(file), tolerances(tol), resolution)
    except ConeError as e:
        fail(e)

    emit("primitive", decision, holds=decision.holds)


@click.command("eigen")
@file_argument
@tol_option
def eigen(file, tol):
    """Distinct eigenvalues of FILE with multiplicities and unit eigenvectors."""
    try:
        pairs = inject.instance(NumericKernelService).eigen_decompose(read_matrix(file), tolerances(tol))
    except ConeError as e:
        fail(e)

    emit("eigen", pairs)


@click.command("power")
@file_argument
@tol_option
@click.option("--seed", "seed_file", type=click.Path(dir_okay=False), default=None,
              help="Stokes vector file to start from; the six fully polarized unit vectors otherwise.")
@click.option("--witness", is_flag=True, help="Iterate I + A instead of A.")
@click.option("--m-max", type=click.IntRange(min=1), default=None, help="Iteration cap (default 10000).")
@click.option("--trace", is_flag=True, help="Include every iterate in the report.")
def power(file, tol, seed_file, witness, m_max, trace):
    """Normalized power iteration x ← A·x/ρ(A) from cone vectors."""
    service = inject.instance(ConeSpectrumService)
    try:
        matrix = read_matrix(file)
        tol = tolerances(tol)
        if witness and seed_file is None:
            traces = service.witness_strong_irreducibility(matrix, tol, m_max)
        else:
            if witness:
                matrix = I4 + matrix
            seeds = [read_vector(seed_file)] if seed_file else service.stokesService.canonical_boundary_seeds()
            traces = [service.power_iteration(matrix, seed, m_max=m_max, tol=tol) for seed in seeds]
    except ConeError as e:
        fail(e)

    if not trace:
        traces = [item.copy(update={"iterates": []}) for item in traces]
    emit("power", traces, holds=all(item.converged and item.limit_class != ConeClass.outside for item in traces))
