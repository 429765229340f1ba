""" Reading and writing the square, partial square and trade files of the commands """
import os


def expand_path(*parts: str) -> str:
    """ Join the parts into an absolute path, expanding ~ """
    return os.path.abspath(os.path.expanduser(os.path.join(*parts)))


def ensure_path(*parts: str) -> str:
    """ The expanded path, once its parent directory exists """
    path = expand_path(*parts)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    return path


def read_text(path: str) -> str:
    with open(expand_path(path)) as f:
        return f.read()


def write_text(path: str, text: str) -> str:
    """ Write a file, creating its directory
    :param path: Where to write, ~ allowed
    :param text: The file contents
    :return: The expanded path written to
    """
    path = ensure_path(path)
    with open(path, 'w') as f:
        f.write(text)
    return path
