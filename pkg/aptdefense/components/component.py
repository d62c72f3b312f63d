import importlib.util


class DefenseComponent:
    """
    Base Class for Network Generators, Integrators, and Experiments.
    """

    def __init__(self):
        self.name = ""
        self.requires_library = []
        self.description = ""

    def available(self) -> tuple[bool, str]:
        """Checks whether all required libraries of the component are installed
        @returns tuple[bool, str] - Availability and a status message.
        """
        for library in self.requires_library:
            if importlib.util.find_spec(library) is None:
                return (False, f"{library} not installed")
        return (True, "Available")
