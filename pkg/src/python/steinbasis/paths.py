"""
Paths module
"""

import json
import os
import os.path

class Paths(object):
    """
    Common methods for generating output paths and loading emitted documents.
    """

    @staticmethod
    def basePath(create=False):
        """
        Base data path - ~/.steinbasis

        Args:
            create: if directory should be created

        Returns:
            path
        """

        path = os.path.join(os.path.expanduser("~"), ".steinbasis")

        # Create directory if required
        if create:
            os.makedirs(path, exist_ok=True)

        return path

    @staticmethod
    def outputPath(command, name=None, create=False):
        """
        Output path for a subcommand, optionally joined with a file name.

        Args:
            command: subcommand name
            name: optional file name
            create: if directory should be created

        Returns:
            path
        """

        path = os.path.join(Paths.basePath(), command)

        if create:
            os.makedirs(path, exist_ok=True)

        return os.path.join(path, name) if name else path

    @staticmethod
    def resolve(path, command, name):
        """
        Resolves an explicit output path, or the default output file of a subcommand.

        Args:
            path: explicit path or None
            command: subcommand name
            name: default file name

        Returns:
            path
        """

        if path:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)

            return path

        return Paths.outputPath(command, name, create=True)

    @staticmethod
    def load(path):
        """
        Loads an emitted JSON document.

        Args:
            path: input file

        Returns:
            dict
        """

        if not os.path.isfile(path):
            print("ERROR: loading document: ensure %s is present" % path)
            raise FileNotFoundError("Unable to load document from %s" % path)

        with open(path, "r") as f:
            return json.load(f)

    @staticmethod
    def save(data, path):
        """
        Writes a JSON document with sorted keys.

        Args:
            data: dict
            path: output file
        """

        with open(path, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write("\n")
