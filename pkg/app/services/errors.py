class ConeError(Exception):
    pass


class ConeInputError(ConeError):
    pass


class ConeDomainError(ConeError):
    pass


class ConeNumericError(ConeError):
    def __init__(self, message: str, routine: str = None, iterations: int = None):
        super().__init__(message)
        self.routine = routine
        self.iterations = iterations

    def __str__(self):
        details = [super().__str__()]
        if self.routine:
            details.append(f"routine={self.routine}")
        if self.iterations is not None:
            details.append(f"iterations={self.iterations}")
        return ", ".join(details)


class MatrixFileError(ConeInputError):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str = None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path

    def __str__(self):
        where = f"{self.path or '<input>'}:{self.line}:{self.column}"
        return f"{where}: {super().__str__()}"
