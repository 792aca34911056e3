from brackpy.read._read import SpecFileError, load_spec, parse_spec
