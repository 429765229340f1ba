""" Turning type-annotated functions into command-line commands.

    def find_trade(square: str, strategy: Strategy = Strategy.GREEDY, pair: Optional[Tuple[int, int]] = None, verbose: bool = False):
        ...

    Command(find_trade).call_from_command_line('sq.txt --strategy proof --pair 1 2 --verbose')

Parameter names become kebab-case flags (the underscore spelling is accepted too), leading values are bound to parameters in
order, and ``:param x:`` lines of the docstring become the help text.
"""
import collections.abc
import inspect
import re
import shlex
import sys
from argparse import ArgumentParser, ArgumentTypeError, RawTextHelpFormatter
from collections import namedtuple
from enum import Enum
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union, get_args, get_origin

from attr import attrs
from more_itertools import zip_equal  # type: ignore

from latin_trades.utils.capture_output import CaptureOutput

ArgSpec = namedtuple('ArgSpec', ['name', 'type', 'default', 'doc'])


class NoValue:
    """ Placeholder for no value being provided """


class CommandLineError(Exception):
    """ The arguments can not be parsed """


def parse_docstring(docstring: str) -> Dict[str, str]:
    """ Map each parameter named on a ``:param x: text`` line to its text """
    argument_pattern = re.compile(r" *:param ([a-zA-Z0-9_]*)( *)(.*?):( *)(.*)")
    return {match.group(1): match.group(5) for line in docstring.split('\n') for match in [argument_pattern.match(line)] if match is not None}


def get_maybe_optional_type(type_annotation):
    """ X for Optional[X], the annotation itself otherwise """
    if get_origin(type_annotation) is Union:
        inner = [t for t in get_args(type_annotation) if t is not type(None)]
        if len(inner) == 1:
            return inner[0]
    return type_annotation


def str2bool(bool_argstring: str) -> bool:
    """ Read yes/no, true/false, t/f, y/n or 1/0, in any case, as a bool """
    if bool_argstring.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif bool_argstring.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise ArgumentTypeError(f'Boolean value expected, but got "{bool_argstring}".')


def _is_enum(type_annotation) -> bool:
    return inspect.isclass(type_annotation) and issubclass(type_annotation, Enum)


def get_appropriate_type_converter(type_annotation) -> Callable[[str], Any]:
    """ Get the converter which maps a single command-line value to the annotated type
    :param type_annotation: A type annotation
    :return: The converter
    """
    type_annotation = get_maybe_optional_type(type_annotation)
    origin_type = get_origin(type_annotation)
    if origin_type in (list, collections.abc.Sequence) or origin_type is tuple and Ellipsis in get_args(type_annotation):
        subtype = get_args(type_annotation)[0]

        def convert_sequence_string(string_rep):
            """ Convert a string like 16,25,36 into [16, 25, 36] """
            return [get_appropriate_type_converter(subtype)(s.strip()) for s in string_rep.split(',') if s.strip()]

        return convert_sequence_string
    elif type_annotation is bool:
        return str2bool
    elif type_annotation in (int, float, str):
        return type_annotation
    elif _is_enum(type_annotation):
        def convert_enum_string(string_rep):
            try:
                return type_annotation(string_rep)
            except ValueError:
                raise ArgumentTypeError(f'Expected one of {[e.value for e in type_annotation]}, got "{string_rep}"')

        return convert_enum_string
    else:
        return str


def _fixed_tuple_types(type_annotation) -> Optional[Tuple[Any, ...]]:
    """ The element types of a fixed-length Tuple annotation such as Tuple[int, int], else None """
    type_annotation = get_maybe_optional_type(type_annotation)
    if get_origin(type_annotation) is tuple and Ellipsis not in get_args(type_annotation):
        return get_args(type_annotation)
    return None


def _is_argument_key(argstr: str) -> bool:
    return argstr.startswith('-') and len(argstr.lstrip('-.,0123456789')) != 0


def _flag_spellings(arg_name: str) -> Tuple[str, ...]:
    kebab = arg_name.replace('_', '-')
    return (kebab,) if kebab == arg_name else (kebab, arg_name)


def _add_arg_to_parser(parser: ArgumentParser, arg_strings: Sequence[str], argspec: ArgSpec) -> None:
    """ Add an argument to the parser object """
    spellings = _flag_spellings(argspec.name)
    arg_type = argspec.type if argspec.type is not NoValue else type(argspec.default) if argspec.default not in (NoValue, None) else str
    inner_type = get_maybe_optional_type(arg_type)
    options: Dict[str, Any] = dict(dest=argspec.name, help=None if argspec.doc is NoValue else argspec.doc)
    if argspec.default is NoValue:
        options['required'] = True
    else:
        options['default'] = argspec.default

    is_flag = False
    if inner_type is bool:  # Allow for "boolean flags" that do not need to be followed by a value because they just mark true
        for i, argstr in enumerate(arg_strings):
            if '=' not in argstr and argstr.lstrip('-') in spellings:
                if i == len(arg_strings) - 1 or _is_argument_key(arg_strings[i + 1]):  # Means that value is not specified
                    is_flag = True
                    break

    tuple_types = _fixed_tuple_types(arg_type)
    if is_flag:
        options['action'] = 'store_true'
    elif tuple_types is not None:
        options.update(nargs=len(tuple_types), type=str, metavar=tuple(t.__name__.upper() for t in tuple_types))
    else:
        options['type'] = get_appropriate_type_converter(arg_type)
        if _is_enum(inner_type):
            options['metavar'] = '{' + ','.join(e.value for e in inner_type) + '}'
    parser.add_argument(*('--' + s for s in spellings), **options)


def _convert_tuple(argspec: ArgSpec, value: Any) -> Any:
    tuple_types = _fixed_tuple_types(argspec.type) if argspec.type is not NoValue else None
    if tuple_types is None or value is None or value is argspec.default:
        return value
    try:
        return tuple(get_appropriate_type_converter(t)(s) for t, s in zip_equal(tuple_types, value))
    except (ValueError, ArgumentTypeError) as err:
        raise CommandLineError(f'Could not read --{argspec.name.replace("_", "-")} {" ".join(value)}: {err}')


class Command:
    """ A type-annotated function called with command-line arguments.

    def distance(first: str, second: str):
        print(hamming_distance(read_square_file(first), read_square_file(second)))

    Command(distance).call_from_command_line('l1.txt l2.txt')
    Command(distance).call_from_command_line('--second l2.txt --first l1.txt')
    """

    def __init__(self, function: Callable, name: Optional[str] = None):
        """
        :param function: The function to call; its annotations give the flag types and its docstring the help
        :param name: The command name used in messages, by default the function name with dashes
        """
        self.function = function
        self.name = name if name is not None else function.__name__.replace('_', '-')
        spec = inspect.getfullargspec(function)
        arg_docs = parse_docstring(function.__doc__) if function.__doc__ is not None else {}
        defaults = [NoValue] * len(spec.args) if spec.defaults is None else [NoValue] * (len(spec.args) - len(spec.defaults)) + list(spec.defaults)
        self._args = [ArgSpec(name=name, type=spec.annotations.get(name, NoValue), default=default, doc=arg_docs.get(name, NoValue))
                      for name, default in zip_equal(spec.args, defaults)]

    def __call__(self, *args, **kwargs):
        return self.function(*args, **kwargs)

    def parse(self, arg_strings: Union[str, Sequence[str]]) -> Dict[str, Any]:
        """ Parse the command line args into a keyword arg dict """
        if isinstance(arg_strings, str):
            arg_strings = shlex.split(arg_strings)
        arg_strings = list(arg_strings)

        # Enable pass-by-order by inserting names
        for i, (argstr, argspec) in enumerate(zip(arg_strings, self._args)):
            if _is_argument_key(argstr):  # Once we start passing by name, it's off
                break
            arg_strings[i] = f'--{argspec.name}={argstr}'

        parser = ArgumentParser(prog=self.name, add_help=True, description=self.function.__doc__, formatter_class=RawTextHelpFormatter)
        for argspec in self._args:
            _add_arg_to_parser(parser, arg_strings, argspec)

        # argparse reports errors by printing and exiting, so catch both
        try:
            with CaptureOutput(still_print=False) as cap:
                args = parser.parse_args(arg_strings)
        except SystemExit as err:
            if err.code == 0:  # Happens when called with -h --help.
                print(cap.read(), end='')
                raise
            message = cap.read_errors().strip().splitlines()
            raise CommandLineError(message[-1] if message else f'{self.name}: could not parse arguments')
        return {argspec.name: _convert_tuple(argspec, getattr(args, argspec.name)) for argspec in self._args}

    def call_from_command_line(self, arg_strings: Union[str, Sequence[str]] = tuple(sys.argv[1:])) -> Any:
        """ Call the wrapped function from command line args
        :param arg_strings: The command line argument strings, e.g. "sq.txt --strategy proof --orders 16,25"
        :return: Whatever the function returns
        """
        return self.function(**self.parse(arg_strings))


@attrs(auto_attribs=True)
class CommandSwitch:
    """ A "Switch" which lets you chose a command with the first arg and pass the remaining args to it.  Switches nest:

        switch = CommandSwitch({'add': add, 'oracle': CommandSwitch({'min-trade': min_trade})})
        switch.call_from_command_line("oracle min-trade sq.txt")
    """

    named_funcs: Dict[str, Union[Command, 'CommandSwitch', Callable]]

    def call_from_command_line(self, arg_strings: Union[str, Sequence[str]] = tuple(sys.argv[1:])) -> Any:
        """ Select a command and call it from command line,
        :param arg_strings: The command line argument strings, e.g. "gen random 9 --seed 42"
        :return: Whatever the command returns
        """
        if isinstance(arg_strings, str):
            arg_strings = shlex.split(arg_strings)
        if len(arg_strings) == 0:
            raise CommandLineError(f"You didn't specify a command.  Options: {list(self.named_funcs)}")
        func_str = arg_strings[0]
        if func_str not in self.named_funcs:
            raise CommandLineError(f"No command {func_str} in options: {list(self.named_funcs)}")
        func = self.named_funcs[func_str]
        if not isinstance(func, (Command, CommandSwitch)):
            func = Command(func, name=func_str)
        return func.call_from_command_line(arg_strings[1:])
