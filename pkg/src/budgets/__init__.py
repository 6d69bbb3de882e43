from budgets.allocation import Pdb, PdbTable, ScalarMode, allocate_pdb, pdb_for_link, scalar_delay

__all__ = ["Pdb", "PdbTable", "ScalarMode", "allocate_pdb", "pdb_for_link", "scalar_delay"]
