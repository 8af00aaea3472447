"""Linha de comando: compila programas, classifica e projeta palavras, reconstrói e roda censos.

Saída 0 em sucesso, 1 em erro de domínio (``BraidError``) e 2 em erro de
leitura ou de uso (``InputError`` e argparse).
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app import config
from app.core.geometry import (
    MoveProgram,
    compile_program,
    embed_at_infinity,
    full_twist_linear_program,
    full_twist_program,
    pure_braid_generator_program,
)
from app.core.group_core import GWord, bounded_equal, generator_parity
from app.core.index_state import (
    CensusLemma,
    classify_word,
    initial_state,
    projection_coherence,
    project_once,
    relation_census,
    run_word,
    stable_projection,
)
from app.core.reconstruction import annular_invariants, kernel_witness, reconstruct_axis
from app.errors import BraidError, DimensionMismatch, InputError
from app.schemas import ProgramSchema

logger = logging.getLogger(__name__)


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"não foi possível ler {source}: {exc.strerror}") from exc


def _word(args, source: Optional[str] = None) -> GWord:
    text = args.word if source is None else source
    if text == "-":
        text = sys.stdin.read()
    return GWord.parse(text.strip(), args.n)


def _load_program(source: str, n: Optional[int] = None):
    program = ProgramSchema.parse_json(_read_text(source)).to_program()
    if n is not None and n != program.n:
        raise DimensionMismatch(f"--n {n} mas o programa tem n={program.n}")
    return program


def _pair(text: str):
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"par esperado no formato i,j: {text!r}")
    return i, j


def cmd_compile(args) -> int:
    program = _load_program(args.program)
    if args.check_closed and not program.closed:
        program = MoveProgram(program.initial, program.moves, True)
    out = compile_program(program)
    print(out.word)
    if args.events:
        for event in out.events:
            print(event)
        if out.twist_turns:
            print(f"twist_turns {out.twist_turns}")
    return 0


def cmd_classify(args) -> int:
    print(classify_word(_word(args)).to_table())
    return 0


def cmd_project(args) -> int:
    w = _word(args)
    if args.stable:
        projected, passes = stable_projection(w)
        logger.debug("projeção estável em %d passadas", passes)
    else:
        projected = project_once(w)
    print(projected)
    return 0


def cmd_reconstruct(args) -> int:
    cyl = reconstruct_axis(_word(args), args.axis)
    print(cyl)
    print(annular_invariants(cyl).to_text())
    return 0


def cmd_equal(args) -> int:
    w1 = _word(args, args.w1)
    w2 = _word(args, args.w2)
    depth = config.BRAID_SEARCH_DEPTH if args.depth is None else args.depth
    max_len = config.BRAID_SEARCH_MAX_LEN if args.max_len is None else args.max_len
    print(bounded_equal(w1, w2, depth, max_len))
    return 0


def cmd_parity(args) -> int:
    parity = generator_parity(_word(args))
    print(parity)
    print("zero" if parity.is_zero() else "odd: " + " ".join(str(g) for g in parity.support()))
    return 0


def cmd_census(args) -> int:
    if args.lemma == "coherence":
        report = projection_coherence(args.n, args.trials, args.max_len, args.seed)
        print(report.summary())
        return 0
    report = relation_census(args.n, args.lemma, args.samples, args.seed)
    print(report.to_table(violations_only=args.violations_only))
    return 0


def cmd_gen(args) -> int:
    if args.embed is not None:
        program = embed_at_infinity(_load_program(args.embed, args.n))
    elif args.full_twist is not None and args.linear:
        program = full_twist_linear_program(args.n).power(args.full_twist)
    elif args.full_twist is not None:
        program = full_twist_program(args.n, args.full_twist)
    else:
        i, j = args.braid
        program = pure_braid_generator_program(args.n, i, j).power(args.power)
    print(ProgramSchema.from_program(program).model_dump_json(indent=2))
    return 0


def cmd_kernel(args) -> int:
    print(kernel_witness(_word(args)))
    return 0


def cmd_selftest(args) -> int:
    checks = []

    report = relation_census(4, CensusLemma.SQUARE)
    checks.append(("square census", not report.violations))

    twist = compile_program(full_twist_program(4, 1))
    checks.append(("full twist emits no letters", len(twist.word) == 0 and twist.twist_turns == 1))

    a13 = compile_program(pure_braid_generator_program(4, 1, 3)).word
    checks.append(("A13 compiles to a realisable word", classify_word(a13).realisable))
    linking = annular_invariants(reconstruct_axis(a13, 4)).linking
    checks.append(("A13 linking via axis 4", linking[(1, 3)] == 1 and linking[(1, 2)] == 0))

    checks.append(("A13 returns to the initial state", run_word(initial_state(4), a13) == initial_state(4)))

    failed = 0
    for name, ok in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        failed += not ok
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freebraid", description="Grupos G_n^3, realizabilidade e tranças")
    parser.add_argument("--log-level", default=None, type=str.upper,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], help="sobrepõe LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    def word_command(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("word", help="palavra, ou - para ler da entrada padrão")
        p.set_defaults(handler=handler)
        return p

    p = sub.add_parser("compile", help="compila um programa JSON numa palavra de G_n^3")
    p.add_argument("program", help="arquivo JSON, ou - para ler da entrada padrão")
    p.add_argument("--events", action="store_true")
    p.add_argument("--check-closed", action="store_true")
    p.set_defaults(handler=cmd_compile)

    word_command("classify", cmd_classify, "marca cada letra como boa ou má")
    p = word_command("project", cmd_project, "apaga as letras más")
    p.add_argument("--stable", action="store_true")
    p = word_command("reconstruct", cmd_reconstruct, "trança cilíndrica em volta de um eixo")
    p.add_argument("--axis", type=int, required=True)
    word_command("parity", cmd_parity, "paridade de cada gerador")
    word_command("kernel", cmd_kernel, "testemunha de que a palavra não é torção completa")

    p = sub.add_parser("equal", help="busca limitada de igualdade entre duas palavras")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("w1")
    p.add_argument("w2")
    p.set_defaults(handler=cmd_equal)

    p = sub.add_parser("census", help="censos exaustivos dos lemas de realizabilidade")
    p.add_argument("--lemma", required=True, choices=[m.value for m in CensusLemma] + ["coherence"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--violations-only", action="store_true")
    p.set_defaults(handler=cmd_census)

    p = sub.add_parser("gen", help="gera programas JSON")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--braid", type=_pair, metavar="I,J")
    group.add_argument("--full-twist", type=int, metavar="M")
    group.add_argument("--embed", metavar="PROGRAM")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--linear", action="store_true", help="torção completa só com movimentos retilíneos")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("selftest", help="verificações rápidas de ponta a ponta")
    p.set_defaults(handler=cmd_selftest)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    config.configure_logging(args.log_level)
    if args.command == "gen" and args.embed is None and args.n is None:
        parser.print_usage(sys.stderr)
        print("freebraid gen: --n é obrigatório com --braid e --full-twist", file=sys.stderr)
        return 2
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"erro de entrada: {exc}", file=sys.stderr)
        return 2
    except BraidError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
