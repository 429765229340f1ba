""" Capturing what a command prints, so the parser can turn argparse's messages into exceptions and tests can read output """

import sys
from io import StringIO


class _Stream:

    def __init__(self, echo_to):
        self.buffer = StringIO()
        self.echo_to = echo_to

    def write(self, string):
        self.buffer.write(string)
        if self.echo_to is not None:
            self.echo_to.write(string)

    def flush(self):
        if self.echo_to is not None:
            self.echo_to.flush()


class CaptureOutput:
    """ Captures standard output and standard error into separate buffers, optionally still printing them.  e.g.

        with CaptureOutput(still_print=False) as cap:
            print('hello')
            print('oops', file=sys.stderr)

        assert cap.read() == 'hello\n'
        assert cap.read_errors() == 'oops\n'
    """

    def __init__(self, still_print=True):
        """
        :param still_print: Still print to the console (in addition to buffering)
        """
        self.still_print = still_print
        self._out = None
        self._err = None
        self.oldout = None
        self.olderr = None

    def __enter__(self):
        self.oldout = sys.stdout
        self.olderr = sys.stderr
        self._out = _Stream(self.oldout if self.still_print else None)
        self._err = _Stream(self.olderr if self.still_print else None)
        sys.stdout = self._out  # type: ignore
        sys.stderr = self._err  # type: ignore
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        assert self.oldout is not None
        assert self.olderr is not None
        sys.stdout = self.oldout
        sys.stderr = self.olderr

    def read(self) -> str:
        """ Read all standard output captured since entering this object """
        assert self._out is not None
        return self._out.buffer.getvalue()

    def read_errors(self) -> str:
        """ Read all standard error captured since entering this object """
        assert self._err is not None
        return self._err.buffer.getvalue()


def capture_value_and_output(func, still_print=True):
    """ Call a function with no arguments, capturing what it prints
    :param func: The function, e.g. lambda: main(['verify', 'sq.txt', 'trade.json'])
    :param still_print: Also echo the output to the console
    :return Tuple[Any, str, str]: The tuple of (return_value, output_string, error_string)
    """
    with CaptureOutput(still_print=still_print) as cap:
        return_val = func()
    return return_val, cap.read(), cap.read_errors()
