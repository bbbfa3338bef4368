"""``.. exception_hierarchy:: package.module`` renders the exceptions a module defines as a nested list under their builtin bases."""
from docutils import nodes
from docutils.parsers.rst import Directive
from docutils.statemachine import StringList

import importlib


class ExceptionHierarchy(nodes.General, nodes.Element):
    pass


def visit_exception_hierarchy_node(self, node):
    self.body.append(self.starttag(node, "div", CLASS="exception-hierarchy-content"))


def depart_exception_hierarchy_node(self, node):
    self.body.append("</div>\n")


def _subtree(parent, classes, depth):
    lines = []
    for cls in classes:
        if parent in cls.__bases__:
            lines.append(f"{'  ' * depth}- :exc:`~{cls.__module__}.{cls.__qualname__}`")
            lines.append("")
            lines.extend(_subtree(cls, classes, depth + 1))

    return lines


class ExceptionHierarchyDirective(Directive):
    required_arguments = 1

    def run(self):
        module = importlib.import_module(self.arguments[0])
        # definition order
        classes = [
            value
            for value in vars(module).values()
            if isinstance(value, type)
            and issubclass(value, BaseException)
            and value.__module__ == module.__name__
        ]
        roots = []
        for cls in classes:
            for base in cls.__bases__:
                if base.__module__ == "builtins" and base not in roots:
                    roots.append(base)

        lines = []
        for root in roots:
            lines.extend([f"- :exc:`{root.__name__}`", ""])
            lines.extend(_subtree(root, classes, 1))

        node = ExceptionHierarchy("\n".join(lines))
        self.state.nested_parse(
            StringList(lines, source=self.arguments[0]), self.content_offset, node
        )
        return [node]


def setup(app):
    app.add_node(
        ExceptionHierarchy,
        html=(visit_exception_hierarchy_node, depart_exception_hierarchy_node),
    )
    app.add_directive("exception_hierarchy", ExceptionHierarchyDirective)
    return {"parallel_read_safe": True}
