int pagesize(int order)
{
	return order * 4096;
}
