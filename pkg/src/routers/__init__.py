"""API route handlers."""



