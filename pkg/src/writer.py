"""Grammar text-format generator."""

from src.grammar import Grammar, Leaf, LinearSlp, Rule, Slp


class GrammarWriter:
    """Generates the text format from grammar nodes, one record per line."""

    def generate(self, g: Grammar) -> str:
        """Generate the text of a whole grammar."""
        return g.accept(self)

    def visit_nodes(self, g: Grammar):
        return [node.accept(self, node_id) for node_id, node in enumerate(g.nodes)]

    def visit_slp(self, g: Slp) -> str:
        lines = self.visit_nodes(g)
        lines.append(f"root {g.root}")
        return "\n".join(lines) + "\n"

    def visit_linear_slp(self, g: LinearSlp) -> str:
        lines = self.visit_nodes(g)
        children = " ".join(str(c) for c in g.root_children)
        lines.append(f"lroot {g.root} {children}")
        return "\n".join(lines) + "\n"

    def visit_leaf(self, node: Leaf, node_id: int) -> str:
        return f"leaf {node_id} {node.symbol}"

    def visit_rule(self, node: Rule, node_id: int) -> str:
        return f"rule {node_id} {node.left} {node.right}"
