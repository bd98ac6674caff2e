"""
Verification Service for the Equivariant Operad Workbench
Runs enumerations, property checks and extension computations and collects the results
into RunReports for the command line.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

from ..components.report_view import RunReport
from ..core.colors import ColorSet, Signature
from ..core.extension import ExtensionProblem, check_universal_property, compare_with_oracle, extension_colimit
from ..core.families import GSigmaFamily, all_family, enumerate_graph_subgroups, validate_family
from ..core.groupoids import family_as_groupoid_family, validate_groupoid_family
from ..core.groups import FiniteGroup, enumerate_subgroups, named_group
from ..core.operads import Operad, check_operad_laws
from ..core.symseq import is_F_equivalence
from ..core.trees import check_pseudo_indexing, enumerate_alternating, enumerate_trees
from ..utils.config import ENGINE_CONFIG
from ..utils.helpers import format_count_row, format_permutation, show_success
from .serialization import (JsonDocument, decode_family, decode_gsigma_subgroup, decode_operad, decode_context,
                            decode_problem, decode_symseq_map, dumps, encode_table_operad)

logger = logging.getLogger(__name__)

# ==================== VERIFICATION SERVICE ====================

class VerificationService:
    """Enumeration, law checking and extension runs behind the CLI subcommands"""

    def __init__(self):
        self.runs = 0

    # ---------- enumerations ----------

    def enumerate_subgroups(self, report: RunReport, group: FiniteGroup) -> RunReport:
        """All subgroups of G in canonical order"""
        self.runs += 1
        subgroups = enumerate_subgroups(group)
        report.add_table('subgroups', [
            {'index': k, 'order': s.order, 'members': ' '.join(s.labels())} for k, s in enumerate(subgroups)
        ], columns=['index', 'order', 'members'])
        report.add_count('group', group.name)
        report.add_count('subgroups', len(subgroups))
        report.add_message(show_success('enumeration_done', f"{len(subgroups)} subgroups of {group.name}"))
        return report

    def enumerate_graph_subgroups(self, report: RunReport, group: FiniteGroup, arities: Sequence[int]) -> RunReport:
        """Graph subgroups of G x Sigma_n^op for every n in range"""
        self.runs += 1
        rows = []
        counts = {}
        for n in arities:
            subgroups = enumerate_graph_subgroups(group, n)
            counts[n] = len(subgroups)
            for s in subgroups:
                rows.append({'arity': n, 'order': s.order,
                             'members': ' '.join(f"({group.label(g)},{format_permutation(p)})"
                                                 for g, p in (s.parent.elements[m] for m in s.sorted_members))})
        report.add_table('graph_subgroups', rows, columns=['arity', 'order', 'members'])
        report.add_count('group', group.name)
        report.add_count('graph_subgroups', format_count_row(counts))
        report.add_message(show_success('enumeration_done', f"graph subgroups of {group.name} x S_n^op"))
        return report

    def enumerate_trees(self, report: RunReport, colors: ColorSet, target: Signature, bound: int,
                        vertex_arities: Sequence[int], equivariant: bool = False) -> RunReport:
        """Tree classes over target with their automorphism orders"""
        self.runs += 1
        classes = enumerate_trees(colors, target, bound, vertex_arities=vertex_arities, equivariant=equivariant)
        report.add_table('trees', [
            {'tree': c.tree.to_text(), 'vertices': c.tree.vertex_count, 'aut_order': c.aut_order} for c in classes
        ], columns=['tree', 'vertices', 'aut_order'])
        report.add_count('signature', target.key(colors))
        report.add_count('classes', len(classes))
        report.add_message(show_success('enumeration_done', f"{len(classes)} tree classes"))
        return report

    def enumerate_alternating(self, report: RunReport, colors: ColorSet, target: Signature, k: int,
                              max_vertex_arity: int) -> RunReport:
        """Alternating tree classes with exactly k inert vertices"""
        self.runs += 1
        classes = enumerate_alternating(colors, target, k, max_vertex_arity=max_vertex_arity)
        report.add_table('alternating_trees', [
            {'tree': c.tree.to_text(), 'vertices': c.tree.vertex_count, 'aut_order': c.aut_order} for c in classes
        ], columns=['tree', 'vertices', 'aut_order'])
        report.add_count('signature', target.key(colors))
        report.add_count('inert_vertices', k)
        report.add_count('classes', len(classes))
        return report

    # ---------- checks ----------

    def check_family(self, report: RunReport, doc: JsonDocument) -> RunReport:
        """Closure of a (G, Sigma)-family, as subgroup lists and as a groupoid family"""
        self.runs += 1
        family = self._perform_family_decode(doc)
        report.add_table('family', [{'arity': n, 'subgroups': c} for n, c in family.counts().items()],
                         columns=['arity', 'subgroups'])

        # 1. Subgroup and conjugation closure per arity
        ok, witness = validate_family(family)
        report.add_check('family closure', ok, family.name, witness.describe() if witness else None)

        # 2. The same family seen on the groupoid G x Sigma^op
        ok, witness = validate_groupoid_family(family_as_groupoid_family(family))
        report.add_check('groupoid family closure', ok, family.name, witness.describe() if witness else None)
        return report

    def check_pseudo_indexing(self, report: RunReport, doc: JsonDocument, bound: int) -> RunReport:
        """The pseudo indexing system condition up to `bound` vertices"""
        self.runs += 1
        family = self._perform_family_decode(doc)
        ok, witness = check_pseudo_indexing(family, bound)
        report.add_count('family', repr(family))
        report.add_count('bound', bound)
        report.add_check('pseudo indexing system', ok, f"{family.name} up to {bound} vertices",
                         witness.describe() if witness else None)
        return report

    def check_operad_laws(self, report: RunReport, doc: JsonDocument, seed: int) -> RunReport:
        """Unit, associativity and equivariance of an operad file"""
        self.runs += 1
        colors, max_arity = decode_context(doc)
        operad = decode_operad(doc, doc.require(doc.data, 'operad', 'document'), colors, max_arity)
        result = check_operad_laws(operad, seed=seed)
        report.add_table('instances', [{'law': law, 'checked': n} for law, n in sorted(result.checked.items())],
                         columns=['law', 'checked'])
        if result.sampled:
            report.add_message(f"sampled with seed {seed}")
        report.add_check('operad laws', result.passed, operad.name,
                         result.witness.describe() if result.witness else None)
        return report

    def check_f_equivalence(self, report: RunReport, doc: JsonDocument) -> RunReport:
        """Fixed-point bijectivity of a symmetric sequence map for a family"""
        self.runs += 1
        f, family = decode_symseq_map(doc)
        colors = f.source.colors
        family = family or all_family(colors.group, range(f.source.max_arity + 1))
        natural, reason = f.check_naturality()
        report.add_count('levelwise_bijective', f.is_levelwise_bijective())
        report.add_count('natural', natural)
        if not natural:
            report.add_message(f"map is not natural: {reason}")
        ok, witness = is_F_equivalence(f, family)
        report.add_check('F-equivalence', ok, family.name, witness.describe(colors) if witness else None)
        return report

    # ---------- extensions ----------

    def extend(self, report: RunReport, doc: JsonDocument, bound: Optional[int] = None,
               export: Optional[str] = None) -> RunReport:
        """Filtration stages of O[u], stabilization, oracle cross-check and universal property"""
        self.runs += 1
        problem, candidates = decode_problem(doc, bound)

        # 1. Stage table
        self._perform_stage_table(report, problem)
        if not report.passed:
            return report

        # 2. Stabilization
        filtration = problem.filtration
        stabilized = filtration.is_stabilized
        report.add_check('stabilized', stabilized,
                         f"at stage {filtration.stabilized_at}" if stabilized else f"bound {problem.bound}",
                         None if stabilized else f"alternating shapes remain beyond stage {problem.bound}")
        if not stabilized:
            return report

        # 3. Oracle cross-check
        ok, witness = compare_with_oracle(problem)
        report.add_check('oracle match', ok, 'extension trees', witness)
        report.add_count('oracle_match', 'yes' if ok else 'no')

        # 4. Universal property against the candidate targets
        if candidates:
            self._perform_universal_property(report, problem, candidates)

        # 5. Export the colimit as a table operad
        if export:
            self._perform_export(report, problem, export)
        if report.passed:
            report.add_message(show_success('stabilized', f"{problem.name} at stage {filtration.stabilized_at}"))
        return report

    def _perform_stage_table(self, report: RunReport, problem: ExtensionProblem):
        rows = []
        for row in problem.filtration.stage_rows():
            rows.append({'stage': row['stage'], 'counts': format_count_row(row['counts']),
                         'shape_classes': row['shape_classes'], 'unresolved': row['unresolved'],
                         'injective': row['injective']})
        report.add_table('stages', rows, columns=['stage', 'counts', 'shape_classes', 'unresolved', 'injective'])
        if rows:
            report.add_count('final_counts', rows[-1]['counts'])
        report.add_count('bound', problem.bound)
        unresolved = sum(row['unresolved'] for row in rows)
        if unresolved:
            report.add_check('within truncation', False, f"arity {problem.max_arity}",
                             f"{unresolved} relations need operations above arity {problem.max_arity}")

    def _perform_universal_property(self, report: RunReport, problem: ExtensionProblem, candidates: List[Operad]):
        ok, rows = check_universal_property(problem, candidates)
        report.add_table('universal_property', [
            {'target': r.target, 'extension_maps': r.extension_maps, 'compatible_pairs': r.compatible_pairs}
            for r in rows
        ], columns=['target', 'extension_maps', 'compatible_pairs'])
        failed = next((r for r in rows if not r.passed), None)
        report.add_check('universal property', ok, f"{len(rows)} targets",
                         f"{failed.target}: {failed.extension_maps} maps vs {failed.compatible_pairs} pairs"
                         if failed else None)

    def _perform_export(self, report: RunReport, problem: ExtensionProblem, path: str):
        exported = encode_table_operad(extension_colimit(problem))
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(dumps(exported))
        logger.info(f"wrote {problem.name} to {path}")
        report.add_count('exported', path)

    def _perform_family_decode(self, doc: JsonDocument) -> GSigmaFamily:
        family = decode_family(doc, doc.data)
        overrides = doc.data.get('override', {})
        for arity, subgroups in sorted(overrides.items()):
            n = int(arity)
            family = family.with_arity(n, [decode_gsigma_subgroup(doc, family.group, n, gens) for gens in subgroups])
        return family

    def get_service_status(self) -> Dict[str, Any]:
        """Get verification service status"""
        return {
            "verification_service_available": True,
            "runs": self.runs,
            "default_bound": ENGINE_CONFIG['default_bound'],
            "exhaustive_limit": ENGINE_CONFIG['exhaustive_limit'],
        }


def trivial_colors(group_name: str = 'trivial') -> ColorSet:
    """One color '*' with the trivial action of the named group"""
    return ColorSet.trivial(['*'], group=named_group(group_name))

# ==================== GLOBAL INSTANCE ====================

# Global instance for easy access
verification_service = VerificationService()
