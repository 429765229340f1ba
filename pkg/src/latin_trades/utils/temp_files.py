""" Temporary directories and square files, for tests and examples """
import os
import shutil
from contextlib import contextmanager
from tempfile import mkdtemp


@contextmanager
def hold_tempdir(delete_after: bool = True, suffix: str = ''):
    """ A fresh directory for the duration of the block, removed afterwards unless ``delete_after`` is False """
    tempdir = mkdtemp(prefix='latin_trades_', suffix=suffix)
    try:
        yield tempdir
    finally:
        if delete_after:
            shutil.rmtree(tempdir, ignore_errors=True)


@contextmanager
def hold_text_file(text: str, name: str = 'square.txt'):
    """ Write ``text`` to ``name`` inside a temporary directory and yield its path.

        with hold_text_file(format_square(back_circulant(3))) as path:
            assert read_square_file(path) == back_circulant(3)
    """
    with hold_tempdir() as tempdir:
        path = os.path.join(tempdir, name)
        with open(path, 'w') as f:
            f.write(text)
        yield path
